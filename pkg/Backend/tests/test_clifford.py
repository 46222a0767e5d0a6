import numpy as np
import pytest

from lctspin.clifford import (
    FAMILIES,
    GeneratorSet,
    build_generators,
    comm_table_check,
    duplicate_beta_line_check,
    generators_dump,
    label_lct_generators,
    relation_defect,
    relations_report,
    volume_element,
    volume_report,
)
from lctspin.config import Signature
from lctspin.errors import DimensionMismatch, SizeLimit


@pytest.mark.parametrize("p, q", [(1, 0), (2, 0), (0, 3), (2, 2), (3, 1), (4, 4), (6, 2)])
def test_relations_hold_exactly(p, q):
    gens = build_generators(p, q)
    assert gens.dim == 2 ** ((p + q + 1) // 2)
    assert len(gens.gens) == p + q
    assert relation_defect(gens) == 0


def test_pauli_pair():
    s1, s2 = build_generators(2, 0).gens
    assert np.array_equal(s1, np.array([[0, 1], [1, 0]]))
    assert np.array_equal(s2, np.array([[0, -1j], [1j, 0]]))


def test_negative_squares():
    gens = build_generators(2, 2)
    eye = gens.identity()
    assert np.array_equal(gens.gens[3] @ gens.gens[3], -eye)


def test_defect_detects_a_broken_generator():
    good = build_generators(2, 0)
    broken = GeneratorSet(p=2, q=0, dim=2, gens=(good.identity(), good.gens[1]), metric=(1, 1))
    assert relation_defect(broken) == 2


def test_size_guard():
    with pytest.raises(SizeLimit):
        build_generators(7, 6)
    with pytest.raises(DimensionMismatch):
        build_generators(0, 0)


def test_one_dimensional_labeling(e1):
    lg = label_lct_generators(1, e1)
    eye = lg.identity()
    squares = [lg.family(name)[0] @ lg.family(name)[0] for name in FAMILIES]
    for sq, sign in zip(squares, (1, 1, -1, -1)):
        assert np.array_equal(sq, sign * eye)
    basis = lg.basis()
    for a in range(4):
        for b in range(a + 1, 4):
            assert not np.any(basis[a] @ basis[b] + basis[b] @ basis[a])


def test_timelike_index_flips_squares(lorentz2):
    lg = label_lct_generators(2, lorentz2)
    eye = lg.identity()
    a0, a1 = lg.alpha_plus
    assert np.array_equal(a1 @ a1, -eye)
    assert not np.any(a0 @ a1 + a1 @ a0)
    assert np.array_equal(lg.alpha_minus[1] @ lg.alpha_minus[1], eye)
    assert relation_defect(lg.as_generator_set()) == 0


def test_labeling_rejects_mismatched_signature(e2):
    with pytest.raises(DimensionMismatch):
        label_lct_generators(1, e2)


def test_one_dimensional_table(e1):
    report = comm_table_check(label_lct_generators(1, e1), "1d")
    assert len(report.lines) == 24
    assert report.passed
    assert report.line("[a+b+, a+] = -2 b+").printed_pass
    assert report.line("[a+b+, b-] = 0").printed_pass


@pytest.mark.parametrize("sig", [Signature.euclidean(1), Signature.euclidean(2), Signature(plus=1, minus=1)])
def test_indexed_table(sig):
    report = comm_table_check(label_lct_generators(sig.n, sig), "nd")
    assert len(report.lines) == 40
    assert report.passed


def test_one_dimensional_table_needs_n1(e2):
    with pytest.raises(DimensionMismatch):
        comm_table_check(label_lct_generators(2, e2), "1d")


def test_duplicate_beta_line_reads_as_beta_minus(e2):
    outcome = duplicate_beta_line_check(label_lct_generators(2, e2))
    assert outcome == {"printed_literal_pass": False, "beta_minus_reading_pass": True}


@pytest.mark.parametrize("sig", [Signature.euclidean(1), Signature(plus=1, minus=1)])
def test_volume_element_is_central_on_bivectors(sig):
    lg = label_lct_generators(sig.n, sig)
    assert volume_report(lg).passed
    eps = volume_element(lg)
    for g in lg.basis():
        assert not np.any(eps @ g + g @ eps)


def test_relations_report():
    report = relations_report([(2, 0), (2, 2), (4, 4), (6, 6)])
    assert report.passed
    assert len(report.lines) == 4


def test_generators_dump(e1):
    dump = generators_dump(label_lct_generators(1, e1).as_generator_set())
    assert dump["dim"] == 4
    assert dump["metric"] == [1, 1, -1, -1]
    assert len(dump["generators"]) == 4
    assert all(isinstance(v, int) for row in dump["generators"][0] for entry in row for v in entry)
