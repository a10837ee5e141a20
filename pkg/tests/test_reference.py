from __future__ import annotations

import pytest

from conftest import family
from gbt_verify import reference as ref
from gbt_verify.hypersurface import fixed_locus_on_X
from gbt_verify.singularity import singular_points
from gbt_verify.torus import FourPoints, by_label, fixed_locus_on_T


def test_table_shapes():
    assert len(ref.TABLE1_BITS) == len(ref.TABLE1_DIMENSIONS) == 17
    for (kind, column) in ref.FIXED_LOCUS_TABLES:
        assert (kind, column) in ref.COLUMN_SPECS


@pytest.mark.parametrize("err", ref.ERRATA, ids=lambda e: e.element)
def test_erratum_reason_holds(err):
    """The element fixes no 2-torsion point in its fixed factors, yet every node is 2-torsion."""
    g = by_label(err.element)
    fixed = [f for f in fixed_locus_on_T(g).per_factor if isinstance(f, FourPoints)]
    assert len(fixed) == 2
    assert not any(p.is_two_torsion() for f in fixed for p in f.points)
    fam = family(err.family, ref.COLUMN_SPECS[(err.family, err.column)])
    assert singular_points(fam).all_in_two_torsion()
    assert fixed_locus_on_X(fam, g).summary() == err.expected
    assert fixed_locus_on_X(family(err.family), g).summary() == err.expected


def test_erratum_lookup():
    assert ref.erratum_for("b", "singular", "g7") is not None
    assert ref.erratum_for("b", "smooth", "g7") is None


def test_nu_closed_form_gives_eight_nodes():
    for v in ref.nu_bad_values():
        assert len(ref.nu_expected_nodes(family("nu", f"nu=({v.num}:{v.den})"))) == 8
