import numpy as np
import pytest

from complementarity.channels import ChannelSpec, apply
from complementarity.errors import BadParameter, MissingPhase, RankDeficient, ZeroDenominator
from complementarity.interferometry import (
    CANONICAL_PHASES,
    FringeRecord,
    extract_four_point,
    extract_least_squares,
    synth_fringes,
)
from complementarity.invariants import path_invariants
from complementarity.rng import GaussianSource
from complementarity.states import PathState, from_preset, reduce_path


def random_path_states(n, seed):
    src = GaussianSource(seed)
    out = []
    for _ in range(n):
        v = src.normal(3)
        radius = src.uniform(1)[0] ** (1 / 3)
        out.append(PathState.from_bloch(radius * v / np.linalg.norm(v)))
    return out


class TestSynth:
    def test_in_phase_peak(self):
        p = reduce_path(from_preset("path", alpha=np.pi / 4, beta=0.0))
        assert synth_fringes(p, [0.0], I0=3.0).intensities[0] == pytest.approx(6.0, abs=1e-14)

    def test_quadrature_peak(self):
        p = reduce_path(from_preset("path", alpha=np.pi / 4, beta=np.pi / 2))
        assert synth_fringes(p, [np.pi / 2]).intensities[0] == pytest.approx(2.0, abs=1e-15)

    def test_flat_for_mixed(self):
        rec = synth_fringes(reduce_path(from_preset("maxmixed")), np.linspace(0, 6, 13), I0=2.5)
        assert np.all(rec.intensities == 2.5)

    @pytest.mark.parametrize("kwargs", [{"I0": 0.0}, {"I0": -1.0}, {"noise_sigma": -0.1}])
    def test_bad_parameters(self, kwargs):
        with pytest.raises(BadParameter):
            synth_fringes(PathState.from_bloch((0, 0, 0)), [0.0], **kwargs)

    def test_negative_noise_is_clamped_and_counted(self):
        p = PathState.from_bloch((1.0, 0.0, 0.0))
        with pytest.warns(RuntimeWarning):
            rec = synth_fringes(p, np.full(200, np.pi), noise_sigma=0.1, seed=1)
        assert rec.clamped > 0
        assert np.all(rec.intensities >= 0)

    def test_seeded_noise_is_deterministic(self):
        p = PathState.from_bloch((0.3, 0.2, 0.1))
        a = synth_fringes(p, CANONICAL_PHASES, noise_sigma=0.01, seed=5).intensities
        b = synth_fringes(p, CANONICAL_PHASES, noise_sigma=0.01, seed=5).intensities
        assert a.tobytes() == b.tobytes()


class TestFourPoint:
    def test_dephased_example(self):
        s = apply(from_preset("polarized", phi=np.pi / 3, theta=0.0), ChannelSpec("dephasing", 0.25))
        p = reduce_path(s)
        res = extract_four_point(synth_fringes(p, CANONICAL_PHASES), p.populations())
        assert res.V_A == pytest.approx(0.25, abs=1e-12)
        assert res.V_N == pytest.approx(0.25 * np.sqrt(3), abs=1e-12)
        assert res.P == pytest.approx(0.0, abs=1e-12)
        assert res.I2 == pytest.approx(0.75, abs=1e-12)
        assert res.source == "four-point"

    def test_balanced_superposition(self):
        p = reduce_path(from_preset("path", alpha=np.pi / 4, beta=0.0))
        res = extract_four_point(synth_fringes(p, CANONICAL_PHASES), p.populations())
        assert np.allclose((res.V_A, res.V_N, res.P, res.I2), (1, 0, 0, 0), atol=1e-12)

    def test_flat_record(self):
        rec = FringeRecord(np.array(CANONICAL_PHASES), np.ones(4))
        res = extract_four_point(rec, (1.0, 1.0))
        assert (res.V_A, res.V_N, res.P, res.I2) == (0.0, 0.0, 0.0, 1.0)

    def test_phases_match_modulo_two_pi(self):
        phases = np.array(CANONICAL_PHASES) + 2 * np.pi
        phases[3] = -np.pi / 2
        p = PathState.from_bloch((0.2, -0.4, 0.1))
        res = extract_four_point(synth_fringes(p, phases), p.populations())
        assert res.V_A == pytest.approx(0.2, abs=1e-12)
        assert res.V_N == pytest.approx(-0.4, abs=1e-12)

    def test_missing_quarter_phase(self):
        rec = FringeRecord(np.array([0.0, np.pi, 3 * np.pi / 2]), np.ones(3))
        with pytest.raises(MissingPhase):
            extract_four_point(rec, (1, 1))

    def test_zero_populations(self):
        rec = FringeRecord(np.array(CANONICAL_PHASES), np.ones(4))
        with pytest.raises(ZeroDenominator):
            extract_four_point(rec, (0, 0))

    def test_round_trip_random_states(self):
        for p in random_path_states(1000, seed=17):
            res = extract_four_point(synth_fringes(p, CANONICAL_PHASES), p.populations())
            assert abs(res.V_A - p.bloch[0]) <= 1e-12
            assert abs(res.V_N - p.bloch[1]) <= 1e-12
            assert res.residual() <= 1e-12
            assert abs(res.I2 - path_invariants(p)[3]) <= 1e-12

    @pytest.mark.filterwarnings("ignore:.*clamped:RuntimeWarning")
    def test_positivity_flag_under_noise(self):
        p = PathState.from_bloch((1.0, 0.0, 0.0))
        flags = []
        for seed in range(20):
            rec = synth_fringes(p, CANONICAL_PHASES, noise_sigma=0.01, seed=seed)
            res = extract_four_point(rec, p.populations())
            assert res.positivity_violated == (res.I2 < 0)
            flags.append(res.positivity_violated)
        assert any(flags)


class TestLeastSquares:
    def test_agrees_with_four_point(self):
        for p in random_path_states(200, seed=3):
            rec = synth_fringes(p, CANONICAL_PHASES)
            a = extract_four_point(rec, p.populations())
            b = extract_least_squares(rec, p.populations())
            assert abs(a.V_A - b.V_A) <= 1e-12 and abs(a.V_N - b.V_N) <= 1e-12
            assert b.source == "least-squares"

    def test_eight_phase_grid(self):
        p = PathState.from_bloch((-0.3, 0.5, 0.6))
        rec = synth_fringes(p, 2 * np.pi * np.arange(8) / 8, I0=4.0)
        res = extract_least_squares(rec, p.populations())
        assert abs(res.V_A + 0.3) <= 1e-12 and abs(res.V_N - 0.5) <= 1e-12
        assert abs(res.I2 - (1 - 0.09 - 0.25 - 0.36)) <= 1e-12

    def test_two_phases(self):
        rec = FringeRecord(np.array([0.0, 1.0]), np.ones(2))
        with pytest.raises(RankDeficient):
            extract_least_squares(rec, (1, 1))

    def test_repeated_phase_is_rank_deficient(self):
        rec = FringeRecord(np.array([0.0, 0.0, 2 * np.pi, 1.0]), np.ones(4))
        with pytest.raises(RankDeficient):
            extract_least_squares(rec, (1, 1))


def test_noise_consistency():
    truth = PathState.from_bloch((0.3, -0.2, 0.4))
    reps = 100_000
    src = GaussianSource(2024)
    clean = synth_fringes(truth, CANONICAL_PHASES).intensities
    noisy = clean + 0.01 * src.normal((reps, 4))
    # vectorized four-point quotient over all repetitions
    v_a = (noisy[:, 0] - noisy[:, 2]) / (noisy[:, 0] + noisy[:, 2])
    standard_error = v_a.std(ddof=1) / np.sqrt(reps)
    assert abs(v_a.mean() - 0.3) <= 3 * standard_error
    # the library path agrees with the vectorized quotient on a sample
    rec = synth_fringes(truth, CANONICAL_PHASES, noise_sigma=0.01, seed=11)
    direct = (rec.intensities[0] - rec.intensities[2]) / (rec.intensities[0] + rec.intensities[2])
    assert extract_four_point(rec, truth.populations()).V_A == direct


class TestCsv:
    def test_round_trip(self):
        p = PathState.from_bloch((0.1, 0.2, 0.3))
        rec = synth_fringes(p, np.linspace(0, 2 * np.pi, 7), noise_sigma=0.02, seed=9)
        back = FringeRecord.from_csv(rec.to_csv())
        assert back.phases.tobytes() == rec.phases.tobytes()
        assert back.intensities.tobytes() == rec.intensities.tobytes()

    def test_header(self):
        assert FringeRecord(np.zeros(1), np.ones(1)).to_csv().splitlines()[0] == "phase,intensity"

    def test_bad_header(self):
        with pytest.raises(ValueError):
            FringeRecord.from_csv("x,y\n0,1\n")

    def test_negative_intensity_rejected(self):
        with pytest.raises(BadParameter):
            FringeRecord(np.zeros(1), -np.ones(1))
