import numpy as np
import pytest

from complementarity import matcore
from complementarity.errors import NonRealExpectation
from complementarity.observables import (
    PAULI_TENSORS,
    Observable,
    decoupled_expectation,
    expectation,
    pauli_tensor,
    sector_components,
)
from complementarity.states import from_preset, validate

from conftest import kron_pauli

# Table of the 16 tensors, rows mu = 0..3 (path), columns nu = 0..3 (polarization)
TABLE = [
    "SSAS",
    "SSAS",
    "AASA",
    "SSAS",
]


@pytest.mark.parametrize("mu,nu", [(m, n) for m in range(4) for n in range(4)])
def test_table_cell(mu, nu):
    t = pauli_tensor(mu, nu)
    assert t.sector == TABLE[mu][nu]
    # sector agrees with the actual matrix structure
    if t.sector == "S":
        assert np.all(t.matrix.imag == 0) and np.array_equal(t.matrix, t.matrix.T)
    else:
        assert np.all(t.matrix.real == 0) and np.array_equal(t.matrix, -t.matrix.T)


def test_named_cells():
    assert pauli_tensor(2, 2).sector == "S"
    assert pauli_tensor(0, 2).sector == "A"
    assert pauli_tensor(3, 3).sector == "S"


def test_census():
    sectors = [t.sector for t in PAULI_TENSORS.values()]
    assert sectors.count("S") == 10
    assert sectors.count("A") == 6


def test_matches_kron():
    for (mu, nu), t in PAULI_TENSORS.items():
        assert np.array_equal(t.matrix, kron_pauli(mu, nu))


def test_tensor_orthogonality():
    keys = list(PAULI_TENSORS)
    for a in keys:
        for b in keys:
            value = matcore.trace_product(PAULI_TENSORS[a].matrix, PAULI_TENSORS[b].matrix)
            assert value == (4 if a == b else 0)


def test_index_range():
    with pytest.raises(IndexError):
        pauli_tensor(4, 0)


class TestExpectation:
    def test_maximally_mixed(self):
        assert expectation(from_preset("maxmixed"), Observable.from_name("s30")) == 0

    def test_balanced_superposition(self):
        s = from_preset("path", alpha=np.pi / 4, beta=0.0)
        assert expectation(s, Observable.from_name("s10")) == pytest.approx(1.0, abs=1e-15)

    def test_quadrature_superposition(self):
        s = from_preset("path", alpha=np.pi / 4, beta=np.pi / 2)
        assert expectation(s, Observable.from_name("s20")) == pytest.approx(1.0, abs=1e-15)

    def test_non_real(self):
        # a non-Hermitian operator smuggled in through the dataclass
        bad = Observable(np.zeros((4, 4)), 1j * np.eye(4))
        with pytest.raises(NonRealExpectation):
            expectation(from_preset("maxmixed"), bad)

    def test_decoupling_random_pairs(self, ginibre_1000, source):
        for m in ginibre_1000:
            o = Observable.from_coefficients(source.normal(16))
            direct = np.trace(m @ o.matrix).real
            assert abs(direct - decoupled_expectation(m, o)) <= 1e-12 * np.linalg.norm(o.matrix)
            assert abs(expectation(m, o) - direct) <= 1e-12 * np.linalg.norm(o.matrix)

    def test_a_sector_vanishes_on_real_states(self, ginibre_1000):
        a_tensors = [t for t in PAULI_TENSORS.values() if t.sector == "A"]
        for m in ginibre_1000[:200]:
            real_state = validate(m.real.astype(complex))
            for t in a_tensors:
                assert abs(expectation(real_state, Observable.tensor(t.mu, t.nu))) <= 1e-15


class TestSectorComponents:
    def test_mixed_product_is_antisymmetric(self):
        o_s, o_a = sector_components(Observable.from_name("s20"))
        assert not np.any(o_s)
        assert np.any(o_a)

    def test_double_sigma2_is_symmetric(self):
        o_s, o_a = sector_components(Observable.from_name("s22"))
        assert not np.any(o_a)
        assert np.array_equal(o_s, kron_pauli(2, 2).real)

    def test_identity(self):
        _, o_a = sector_components(Observable.tensor(0, 0))
        assert not np.any(o_a)

    def test_reconstruction_and_cross_check(self, source):
        for _ in range(200):
            o = Observable.from_coefficients(source.normal(16))
            o_s, o_a = sector_components(o)
            assert np.max(np.abs(o_s + 1j * o_a - o.matrix)) <= 1e-13
            pair = matcore.hermitian_split(o.matrix)
            assert np.max(np.abs(pair.sym - o_s)) <= 1e-13
            assert np.max(np.abs(pair.antisym - o_a)) <= 1e-13


class TestObservable:
    def test_from_matrix_recovers_coefficients(self, source):
        c = source.normal((4, 4))
        o = Observable.from_matrix(Observable.from_coefficients(c).matrix)
        assert np.max(np.abs(o.coefficients - c)) <= 1e-14

    @pytest.mark.parametrize("name", ["s12", "s00", "s33"])
    def test_name_round_trip(self, name):
        assert Observable.from_name(name).name == name

    @pytest.mark.parametrize("name", ["s4", "x12", "s123", "s14"])
    def test_bad_names(self, name):
        with pytest.raises(ValueError):
            Observable.from_name(name)

    def test_sector_of_combinations(self):
        c = np.zeros((4, 4))
        c[1, 0] = 1
        assert Observable.from_coefficients(c).sector == "S"
        c[0, 2] = 0.5
        assert Observable.from_coefficients(c).sector == "mixed"
        assert Observable.from_name("s32").sector == "A"
