import dataclasses

import pytest

from rhtc import catalog
from rhtc.cdga import CdgaMorphism, FreeCDGA, identity_morphism, ideal_power_basis, quotient_by_ideal, tensor_square
from rhtc.cohomology import LinearMap, cohomology, induced_map, zero_map
from rhtc.retraction import (
    build_homotopy_retraction,
    lift_retraction,
    semifree_factorization,
    surjective_trick,
    verify_retraction,
)


def projection(model, n, cap):
    ts = tensor_square(model)
    return quotient_by_ideal(ts.algebra, ideal_power_basis(ts, n + 1, cap), cap + 1)[1]


def unit_into_s3():
    return CdgaMorphism(FreeCDGA([], []), catalog.model("s3"), [])


def test_surjective_trick_unit():
    st = surjective_trick(unit_into_s3(), 6)
    assert st.R.names == ("u3_0", "du3_0")
    assert st.R.degrees == (3, 4)
    assert all(st.q.is_surjective(k) for k in range(7))
    # d(du) = 0 and q(du) = dx = 0
    assert st.q.images[1] == {}
    Hi = induced_map(st.i, 6)
    assert all(Hi.is_iso(k) for k in range(7))


def test_surjective_trick_identity(s2):
    st = surjective_trick(identity_morphism(s2), 8)
    assert st.R is s2 and not st.added
    for k in range(9):
        assert st.r.matrix(k) == st.i.matrix(k)


def test_surjective_trick_identities(s2):
    ts = tensor_square(s2)
    st = surjective_trick(ts.mu, 8)
    # μ is already surjective
    assert st.R is ts.algebra
    for k in range(9):
        assert st.q.matrix(k) == ts.mu.matrix(k)


def test_surjective_trick_cap_too_small(cp2):
    with pytest.raises(ValueError):
        surjective_trick(CdgaMorphism(FreeCDGA([], []), cp2, []), 3)


def test_semifree_iso():
    s2 = catalog.model("s2")
    sf = semifree_factorization(identity_morphism(s2), 8)
    assert len(sf.P.gens) == 1
    for k in range(9):
        assert sf.psi.matrix(k) == identity_morphism(s2).matrix(k)


def test_semifree_s3_p0():
    s3 = catalog.model("s3")
    q = projection(s3, 0, 12)
    sf = semifree_factorization(q, 12)
    assert sf.stages <= 12
    HP = cohomology(sf.P, 12, check=True)
    HB = cohomology(sf.B_module, 12)
    H = induced_map(sf.psi, 12, Hs=HP, Ht=HB)
    assert all(H.is_iso(k) for k in range(13))
    assert sf.P.leibniz_defect(0, 12) is None
    names = [g.name for g in sf.P.gens[1:]]
    assert names == sorted(names, key=lambda s: (int(s.split("_")[0][1:])))


def test_psi_extends_q():
    s2 = catalog.model("s2")
    q = projection(s2, 1, 8)
    sf = semifree_factorization(q, 8)
    for k in range(9):
        cols = [sf.psi.apply(k, c) for c in sf.j.matrix(k)]
        assert cols == q.matrix(k)


def test_lift_trivial_extension(s2):
    sf = semifree_factorization(identity_morphism(s2), 8)
    lift = lift_retraction(sf, 8)
    for k in range(9):
        assert lift.rho.matrix(k) == [{j: 1} for j in range(s2.dim(k))]


def test_lift_fails_without_injectivity(s3):
    sf = semifree_factorization(projection(s3, 0, 10), 10)
    assert lift_retraction(sf, 10).rho is None


def test_unit_retraction():
    rep = build_homotopy_retraction(unit_into_s3(), 6)
    assert rep.success
    assert rep.verification.passed
    # the retraction sends the new generator to zero
    assert all(not v for g, v in rep.lift.values.items() if g)


def test_identity_retraction(s2):
    rep = build_homotopy_retraction(identity_morphism(s2), 8)
    assert rep.success and len(rep.semifree.P.gens) == 1


def test_s3_p1_is_identity(s3):
    rep = build_homotopy_retraction(projection(s3, 1, 10), 10)
    assert rep.success


@pytest.mark.parametrize("n, ok", [(1, False), (2, True)])
def test_s2_projections(s2, n, ok):
    rep = build_homotopy_retraction(projection(s2, n, 8), 8, enforce_hypotheses=False)
    assert rep.success is ok
    if ok:
        assert rep.verification.passed
        assert rep.duality.ok
    else:
        assert rep.status == "no_retraction_at_cap"
        assert not rep.injectivity.injective


def test_hypotheses_enforced(s2):
    rep = build_homotopy_retraction(projection(s2, 1, 8), 8)
    assert rep.status == "not_injective"
    # (x⊗1 − 1⊗x)² = −2 x⊗x survives in H but dies in the quotient
    assert rep.injectivity.degree == 4 and rep.injectivity.witness


def test_non_pd_source_refused():
    A = catalog.model("nonpd")
    rep = build_homotopy_retraction(identity_morphism(A), 8)
    assert rep.status == "not_pd"


@pytest.fixture(scope="module")
def s2_witness():
    rep = build_homotopy_retraction(projection(catalog.model("s2"), 2, 8), 8)
    return rep.witness


def test_witness_passes(s2_witness):
    report = verify_retraction(s2_witness)
    assert report.passed
    assert len(report.checks) == 9


def test_zeroed_ret_fails(s2_witness):
    w = dataclasses.replace(s2_witness, ret=zero_map(s2_witness.P, s2_witness.A_module))
    assert verify_retraction(w).failed() == ["ret∘g = id"]


def test_zeroed_psi_fails_quasi_iso(s2_witness):
    w = dataclasses.replace(s2_witness, psi=zero_map(s2_witness.P, s2_witness.B_module))
    failed = verify_retraction(w).failed()
    assert "H(ψ) iso" in failed and "ψ∘g = f" in failed


def test_non_module_ret_fails(s2_witness):
    w0 = s2_witness
    P = w0.P
    # ret twisted on products with a generator: still a chain map on
    # degree 0 but not linear over the algebra
    def fn(k):
        cols = [dict(c) for c in w0.ret.matrix(k)]
        if k == 2:
            cols = [{j: 2 * v for j, v in c.items()} for c in cols]
        return cols

    w = dataclasses.replace(w0, ret=LinearMap(P, w0.A_module, fn))
    failed = verify_retraction(w).failed()
    assert "ret∘g = id" in failed
    assert "ret module map" in failed or "ret chain map" in failed
