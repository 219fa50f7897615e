"""Classification decision procedures for the two families.

Two-generator side: the twisted-tensor-product predicate driven by the
f_n scan, and the graded isomorphism type (skew plane / Jordan plane),
each verdict shipping an explicit congruence or substitution witness.

Three-generator side: normalization of the twelve coefficients (kill the
z^2 coefficient of the second image, Jordan form of the degree-1 matrix,
then A and C rescales), followed by the Ore / reducible / elliptic
trichotomy with concrete counterexample witnesses on failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .families import (
    EllipticForm,
    OreData,
    ParamTuple2D,
    ParamTuple3D,
    apply_basis_change,
    build_C,
    build_T,
    derivation_residuals,
    mat2_inv,
)
from .freealg import NCPoly
from .rewrite import degree3_overlap_elements
from .scalars import CharTwo, Scalar, ScalarMatrix, adjoin_sqrt, solve_quadratic


class SingularN(Exception):
    pass


class NotCanonical(Exception):
    pass


@dataclass(frozen=True)
class Witness:
    kind: str
    detail: str
    data: dict = dc_field(default_factory=dict)

    def __repr__(self):
        return f"[{self.kind}] {self.detail}"


# ---------------------------------------------------------------------------
# two-generator family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwoDTTPVerdict:
    kind: str  # "is_ttp" | "not_ttp"
    certified_to: int | None  # None: unconditional; n: no obstruction up to n
    witness: Witness | None = None

    @property
    def is_ttp(self):
        return self.kind == "is_ttp"

    def __repr__(self):
        if self.kind == "is_ttp":
            tag = "unconditional" if self.certified_to is None else f"certified to N={self.certified_to}"
            return f"IsTTP({tag})"
        return f"NotTTP({self.witness})"


def canonical_2d(p):
    """Canonical representative (ac,b,1), (1,b,0) or (0,b,0) of C(a,b,c)."""
    field = p.field
    if not p.c.is_zero():
        return ParamTuple2D(p.a * p.c, p.b, field.one())
    if not p.a.is_zero():
        return ParamTuple2D(field.one(), p.b, field.zero())
    return p


def _dependence_witness(a, b, n, field):
    """The spanning-set dependence relation at the first vanishing index."""
    from .sequences import efgh

    alphabet = build_C(ParamTuple2D(a, b, field.one())).alphabet
    row = efgh(a, b, n)
    terms = {
        alphabet.word("z" + "x" * n + "z"): row.e,
        alphabet.word("x" * (n + 1) + "z"): -row.g,
        alphabet.word("x" * (n + 2)): a * row.e,
    }
    return NCPoly(alphabet, field, terms)


def classify_2d_ttp(p, bound=50):
    """Decide whether C(a,b,c) is a twisted tensor product of k[x] and k[z].

    One-sided cases (a = 0 or c = 0) are unconditional.  Otherwise the
    f_n(ac, b) scan runs to the bound; over a finite field a closed orbit
    upgrades a clean scan to an unconditional certificate.
    """
    from .sequences import fn_nonvanishing

    field = p.field
    if p.a.is_zero() or p.c.is_zero():
        return TwoDTTPVerdict("is_ttp", None)
    t = p.a * p.c
    report = fn_nonvanishing(t, p.b, bound)
    if report.all_nonzero:
        return TwoDTTPVerdict("is_ttp", None if report.cycle_closed else bound)
    n = report.zero_index
    if n == 1 and p.b == field.scalar(-1):
        dims = build_C(canonical_2d(p)).hilbert(4)
        return TwoDTTPVerdict(
            "not_ttp",
            None,
            Witness(
                "hilbert_mismatch",
                "dimension growth is Fibonacci, not polynomial",
                {"n": n, "dims": tuple(dims)},
            ),
        )
    rel = _dependence_witness(t, p.b, n, field)
    return TwoDTTPVerdict(
        "not_ttp",
        None,
        Witness(
            "dependence_relation",
            f"f_{n}(ac, b) = 0 forces a relation among the spanning monomials "
            "of the rescaled presentation",
            {"n": n, "relation": rel},
        ),
    )


@dataclass(frozen=True)
class CongruenceData:
    m: ScalarMatrix
    n: ScalarMatrix
    target: ScalarMatrix


def congruence_verify(cd):
    """Exact check of N^t M N = target; the witness matrix must be invertible."""
    if cd.n.nrows != cd.n.ncols:
        raise SingularN("witness matrix is not square")
    if cd.n.det().is_zero():
        raise SingularN("witness matrix is singular")
    return cd.n.transpose() * cd.m * cd.n == cd.target


def relation_phi_matrix(rel):
    """M with f = x phi(x) + z phi(z), phi read off a two-generator relation."""
    alphabet = rel.alphabet
    field = rel.field
    if len(alphabet) != 2:
        raise ValueError("expects a two-letter alphabet")
    grid = [[rel.coeff((i, j)) for j in range(2)] for i in range(2)]
    return ScalarMatrix(field, grid)


def skew_matrix(q):
    """phi-matrix of zx - q xz."""
    field = q.field
    return ScalarMatrix(field, [[field.zero(), -q], [field.one(), field.zero()]])


def jordan_matrix(field):
    """phi-matrix of zx - xz - z^2."""
    one = field.one()
    return ScalarMatrix(field, [[field.zero(), -one], [one, -one]])


def c_matrix(a, b):
    """phi-matrix of zx - a x^2 - b xz - z^2."""
    field = a.field
    return ScalarMatrix(field, [[-a, -b], [field.one(), -field.one()]])


@dataclass(frozen=True)
class IsoType2D:
    kind: str  # "skew" | "jordan" | "zx_zero" | "xsq_zero"
    q: Scalar | None
    canonical: ParamTuple2D
    witness: object  # CongruenceData or a substitution dict
    roots: tuple = ()

    def __repr__(self):
        if self.kind in ("skew", "zx_zero"):
            return f"SkewPlane(q={self.q})"
        return {"jordan": "JordanPlane", "xsq_zero": "SquareZero"}[self.kind]


def _canonical_root(roots):
    """Deterministic representative of {q, 1/q}: smallest canonical encoding."""
    return min(roots, key=lambda r: r.sort_key())


def graded_iso_type_2d(p, bound=50):
    """Graded isomorphism type of a twisted tensor product C(a,b,c).

    The hypothesis that C(a,b,c) is a twisted tensor product is rechecked
    with the given scan bound; each verdict carries either an explicit
    congruence matrix or a generator substitution witnessing it.  The
    square-zero type (relation a perfect square) never occurs here: its
    coefficient matrix would be symmetric of rank one, which forces the
    excluded degenerate parameters.
    """
    verdict = classify_2d_ttp(p, bound)
    if not verdict.is_ttp:
        raise ValueError(f"not a twisted tensor product: {verdict}")
    field = p.field
    cp = canonical_2d(p)
    a, b = cp.a, cp.b
    one = field.one()

    if cp.c.is_zero():
        if cp.a.is_zero():
            kind = "zx_zero" if b.is_zero() else "skew"
            return IsoType2D(kind, b, cp, {"x": "x", "z": "z"}, (b,))
        if b == one:
            # x -> -z, z -> x carries the relation onto the Jordan one
            return IsoType2D("jordan", None, cp, {"x": "-z", "z": "x"})
        kind = "zx_zero" if b.is_zero() else "skew"
        witness = {"x": f"({one - b})x", "z": "x + z"}
        return IsoType2D(kind, b, cp, witness, (b,))

    mc = c_matrix(a, b)
    jordan_disc = 4 * a - (b - one) * (b - one)
    if jordan_disc.is_zero():
        if field.characteristic() == 2:
            s = field.sqrt(a)
        else:
            s = (b - one) / 2  # the square root of a with 2s = b - 1
        n = ScalarMatrix(field, [[one + s, field.zero()], [s, one]])
        cd = CongruenceData(jordan_matrix(field), n, mc)
        assert congruence_verify(cd)
        return IsoType2D("jordan", None, cp, cd)

    if b == field.scalar(-1):
        if field.characteristic() == 2:
            raise CharTwo("the q = -1 branch requires characteristic != 2")
        ext, w = adjoin_sqrt(one - a)
        if ext == field:
            aa, bb, ww = a, b, w
        else:
            aa, bb, ww = ext.embed(a), ext.embed(b), w
        e1 = ext.one()
        two = ext.scalar(2)
        n = ScalarMatrix(ext, [[(e1 + ww) / two, -e1 / two], [ww - e1, e1]])
        q = -e1
        cd = CongruenceData(skew_matrix(q), n, c_matrix(aa, bb))
        assert congruence_verify(cd)
        return IsoType2D("skew", q, cp, cd, (q,))

    res = solve_quadratic(a + b, 2 * a - b * b - one, a + b)
    roots = tuple(res.roots)
    q = _canonical_root(roots)
    F2 = res.field
    if res.extended:
        aa, bb = F2.embed(a), F2.embed(b)
    else:
        aa, bb = a, b
    e1 = F2.one()
    n = ScalarMatrix(
        F2,
        [
            [(bb * q - e1) / (q * q - e1), e1 / (q - e1)],
            [(bb - q) / (q + e1), e1],
        ],
    )
    cd = CongruenceData(skew_matrix(q), n, c_matrix(aa, bb))
    assert congruence_verify(cd)
    kind = "zx_zero" if q.is_zero() else "skew"
    return IsoType2D(kind, q, cp, cd, roots)


def rigidity_check_2d(p, p2):
    """Twisted-tensor-product isomorphism is bare equality of canonical tuples."""
    for t in (p, p2):
        ok = t.c == t.field.one() or (
            t.c.is_zero() and (t.a == t.field.one() or t.a.is_zero())
        )
        if not ok:
            raise NotCanonical(f"{t} is not in canonical form")
    return p == p2


# ---------------------------------------------------------------------------
# three-generator family: normalization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Step:
    kind: str  # "swap_xy" | "rescale_z" | "shear_y_add_x" | "gl2" | "rescale_y" | "extend_field"
    pm: ScalarMatrix | None = None
    lam: Scalar | None = None
    note: str = ""
    new_field: object = None  # set on extend_field steps


@dataclass(frozen=True)
class JNF3DResult:
    params: ParamTuple3D
    trace: tuple
    normalized: bool
    obstruction: str | None = None


def _identity2(field):
    return ScalarMatrix.identity(field, 2)


def jordan_normal_form_3d(p):
    """Normalize the twelve coefficients by the isomorphism group action.

    Output satisfies D = F = 0 and e, f in {0, 1}, with A normalized to
    {0, 1} when e = 0 and C to {0, 1} when e = A = 0, and d = E when
    e = 1.  Each step records the substitution applied, so the isomorphism
    can be replayed or inverted.  When the z^2 coefficient is nonzero the
    degree-1 matrix can only be normalized if the orthogonal direction of
    the z^2 vector is one of its left eigendirections; otherwise the tuple
    is returned partially normalized with the obstruction named (such a
    tuple is never a twisted tensor product).
    """
    field = p.field
    steps = []
    cur = p

    def push(kind, pm=None, lam=None, note=""):
        nonlocal cur
        pm2 = pm if pm is not None else _identity2(cur.field)
        lam2 = cur.field.scalar(lam) if lam is not None else cur.field.one()
        cur = apply_basis_change(cur, pm2, lam2)
        steps.append(Step(kind, pm2, lam2, note))

    # stage 1: kill F and normalize f to {0, 1}
    if not cur.F.is_zero():
        push("swap_xy", ScalarMatrix(field, [[0, 1], [1, 0]]), 1, "exchange f and F")
    if not cur.f.is_zero() and cur.f != field.one():
        push("rescale_z", None, cur.f.inv(), "make f = 1")
    if not cur.F.is_zero():
        # now f = 1: the shear y -> y + F x removes the remaining z^2 term
        shear = ScalarMatrix(cur.field, [[cur.field.one(), cur.field.zero()], [cur.F, cur.field.one()]])
        push("shear_y_add_x", shear, 1, "kill F")
    assert cur.F.is_zero() and (cur.f.is_zero() or cur.f == cur.field.one())

    # stage 2: Jordan form of the degree-1 matrix
    if cur.f.is_zero():
        result = _jordanize_free(cur, steps)
        if result is None:
            return JNF3DResult(cur, tuple(steps), False, "nested field extension needed")
        cur = result
    else:
        if not cur.D.is_zero():
            return JNF3DResult(
                cur,
                tuple(steps),
                False,
                "z^2 direction is not aligned with a left eigendirection "
                "of the degree-1 matrix (D cannot be removed while f = 1)",
            )
        fld = cur.field
        if cur.d != cur.E:
            if not cur.e.is_zero():
                t = -cur.e / (cur.d - cur.E)
                pm = ScalarMatrix(fld, [[fld.one(), t], [fld.zero(), fld.one()]])
                cur = apply_basis_change(cur, pm, fld.one())
                steps.append(Step("gl2", pm, fld.one(), "diagonalize keeping f = 1"))
        elif not cur.e.is_zero():
            pm = ScalarMatrix(fld, [[fld.one(), fld.zero()], [fld.zero(), cur.e.inv()]])
            cur = apply_basis_change(cur, pm, fld.one())
            steps.append(Step("rescale_y", pm, fld.one(), "make e = 1"))
        assert cur.D.is_zero() and (cur.e.is_zero() or cur.e == cur.field.one())

    # stage 3: rescale y to pin A, then C
    fld = cur.field
    if cur.e.is_zero():
        if not cur.A.is_zero() and cur.A != fld.one():
            pm = ScalarMatrix(fld, [[fld.one(), fld.zero()], [fld.zero(), cur.A]])
            cur = apply_basis_change(cur, pm, fld.one())
            steps.append(Step("rescale_y", pm, fld.one(), "make A = 1"))
        if cur.A.is_zero() and not cur.C.is_zero() and cur.C != fld.one():
            pm = ScalarMatrix(fld, [[fld.one(), fld.zero()], [fld.zero(), cur.C.inv()]])
            cur = apply_basis_change(cur, pm, fld.one())
            steps.append(Step("rescale_y", pm, fld.one(), "make C = 1"))
    return JNF3DResult(cur, tuple(steps), True)


def _jordanize_free(cur, steps):
    """Full GL2 Jordan normalization of the degree-1 matrix (f = F = 0)."""
    from .scalars import NestedExtension, solve_quadratic

    fld = cur.field
    d, e, D, E = cur.d, cur.e, cur.D, cur.E
    if e.is_zero() and D.is_zero() and d == E:
        return cur  # scalar matrix: already diagonal
    tr = d + E
    det = d * E - e * D
    try:
        res = solve_quadratic(fld.one(), -tr, det)
    except NestedExtension:
        return None
    F2 = res.field
    if res.extended:
        cur = cur.coerced(F2)
        steps.append(Step("extend_field", None, None, f"adjoin eigenvalue field {F2}", F2))
        d, e, D, E = cur.d, cur.e, cur.D, cur.E
    if len(res.roots) == 2:
        lams = sorted(res.roots, key=lambda r: r.sort_key())
        u1 = _left_eigvec(F2, d, e, D, E, lams[0])
        u2 = _left_eigvec(F2, d, e, D, E, lams[1])
        pinv = ScalarMatrix(F2, [u1, u2])
    else:
        lam = res.roots[0]
        if e.is_zero() and D.is_zero():
            return cur  # scalar after coercion (cannot happen with extension)
        u2 = _left_eigvec(F2, d, e, D, E, lam)
        u1 = _left_generalized(F2, d, e, D, E, lam, u2)
        pinv = ScalarMatrix(F2, [u1, u2])
    pm = mat2_inv(pinv)
    out = apply_basis_change(cur, pm, F2.one())
    steps.append(Step("gl2", pm, F2.one(), "Jordan form of the degree-1 matrix"))
    return out


def _left_eigvec(field, d, e, D, E, lam):
    """Nonzero row u with u (M - lam I) = 0 for M = [[d, e], [D, E]]."""
    # u (M - lam) = (u0 (d-lam) + u1 D, u0 e + u1 (E-lam))
    if not D.is_zero():
        return [field.one(), -(d - lam) / D]
    if not (E - lam).is_zero():
        return [field.one(), -e / (E - lam)]
    if not (d - lam).is_zero():
        return [field.zero(), field.one()]
    # M = lam I on this row structure; any vector works
    return [field.zero(), field.one()]


def _left_generalized(field, d, e, D, E, lam, u):
    """Row r with r (M - lam I) = u (single 2x2 Jordan block case)."""
    m = ScalarMatrix(field, [[d - lam, D], [e, E - lam]])  # transpose of M - lam I
    sol = m.solve(u)
    assert sol is not None, "generalized eigenvector must exist for a Jordan block"
    return sol


def inverse_steps(trace):
    """Substitution data undoing a normalization trace (reversed order)."""
    out = []
    for step in reversed(trace):
        if step.kind == "extend_field":
            out.append(step)
            continue
        out.append(Step(step.kind + "_inv", mat2_inv(step.pm), step.lam.inv(), f"undo {step.note}"))
    return tuple(out)


# ---------------------------------------------------------------------------
# three-generator family: trichotomy
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TTPType3D:
    kind: str  # "ore" | "reducible" | "elliptic" | "not_ttp" | "unknown"
    case: str | None
    normal_form: ParamTuple3D | None
    trace: tuple
    certified_to: int | None  # None means unconditional
    witness: Witness | None = None
    elliptic_form: EllipticForm | None = None

    @property
    def is_ttp(self):
        return self.kind in ("ore", "reducible", "elliptic")

    def __repr__(self):
        if self.kind == "ore":
            return f"OreType(case {self.case})"
        if self.kind == "reducible":
            tag = "" if self.certified_to is None else f", certified to N={self.certified_to}"
            return f"ReducibleType(case {self.case}{tag})"
        if self.kind == "elliptic":
            return f"EllipticType({self.normal_form})"
        if self.kind == "unknown":
            return f"Unknown(N={self.certified_to})"
        return f"NotTTP({self.witness})"


def ore_case_id(p):
    """Mutually exclusive Ore case label from the normalized coefficients."""
    one = p.field.one()
    if p.e.is_zero():
        if p.d == one and p.E == one:
            return "1.i"
        if p.E == one:
            return "1.ii"
        if p.d == one:
            return "1.iii"
        return "1.iv"
    if p.d == one:
        return "2.i"
    return "2.ii"


def reducible_case_id(p):
    """Case label (i)-(vii) for a normalized tuple with vanishing second obstruction."""
    fld = p.field
    one = fld.one()
    if p.e.is_zero():
        if p.C.is_zero():
            if p.E.is_zero():
                return "i"
            if p.E == one:
                return "ii"
            if p.E == -one and p.d == -one and p.B == fld.scalar(2):
                return "iii"
            raise AssertionError(f"no reducible case matches {p}")
        if p.E.is_zero():
            return "iv"
        if p.E == -one and p.d == -one and p.B == fld.scalar(2):
            return "v"
        raise AssertionError(f"no reducible case matches {p}")
    if p.d.is_zero():
        return "vi"
    if p.d == one:
        return "vii"
    raise AssertionError(f"no reducible case matches {p}")


def reducible_system_residuals(p):
    """The six vanishing conditions equivalent to the second obstruction being 0."""
    a, b, c, d, e = p.a, p.b, p.c, p.d, p.e
    B, C, E = p.B, p.C, p.E
    one = p.field.one()
    two = p.field.scalar(2)
    return [
        ("1", E * (one - B - E)),
        ("2", E * (-d - B + d * E)),
        ("3", B * (one - d - B) - a * (one - E * E)),
        ("4", E * (C + C * E + e - e * E)),
        ("5", C * (one - d - two * B - B * E) - b * (one - E * E) - e * B),
        ("6", (one + E) * (-c * (one - E) - C * C) - e * C),
    ]


def _product_dims_ok(p, degree):
    dims = build_T(p).hilbert(degree)
    for m in range(degree + 1):
        want = (m + 1) * (m + 2) // 2
        if dims[m] != want:
            return False, m, want, dims[m]
    return True, None, None, None


def classify_3d(p, bound=50, hilbert_degree=4):
    """Full trichotomy decision for the three-generator family.

    Normalizes first, then branches on the z^2 coefficient: the one-sided
    case reduces to the derivation check (an exact decision), the others
    to the two degree-3 obstruction elements, the f_n scan and the
    elliptic coefficient constraints.
    """
    from .sequences import fn_nonvanishing

    jnf = jordan_normal_form_3d(p)
    if not jnf.normalized:
        ok, m, want, got = _product_dims_ok(p, hilbert_degree)
        if not ok:
            return TTPType3D(
                "not_ttp",
                None,
                jnf.params,
                jnf.trace,
                None,
                Witness(
                    "hilbert_mismatch",
                    f"dim in degree {m} is {got}, a twisted tensor product needs {want}",
                    {"degree": m, "expected": want, "got": got, "obstruction": jnf.obstruction},
                ),
            )
        return TTPType3D(
            "unknown",
            None,
            jnf.params,
            jnf.trace,
            hilbert_degree,
            Witness("alignment_obstruction", jnf.obstruction or "", {}),
        )

    q = jnf.params
    fld = q.field
    one = fld.one()

    if q.f.is_zero():
        residuals = derivation_residuals(OreData.from_params(q))
        bad = next(((name, v) for name, v in residuals if not v.is_zero()), None)
        if bad is not None:
            return TTPType3D(
                "not_ttp",
                None,
                q,
                jnf.trace,
                None,
                Witness(
                    "constraint_violated",
                    f"derivation condition fails at the {bad[0]} coefficient",
                    {"monomial": bad[0], "value": bad[1]},
                ),
            )
        return TTPType3D("ore", ore_case_id(q), q, jnf.trace, None)

    g1, g2 = degree3_overlap_elements(q)
    if g2.is_zero():
        report = fn_nonvanishing(q.a, q.d, bound)
        if not report.all_nonzero:
            n = report.zero_index
            return TTPType3D(
                "not_ttp",
                None,
                q,
                jnf.trace,
                None,
                Witness(
                    "fn_zero",
                    f"f_{n}(a, d) = 0: the quotient by the normal generator y "
                    "is not a twisted tensor product",
                    {"n": n, "a": q.a, "d": q.d},
                ),
            )
        for name, v in reducible_system_residuals(q):
            assert v.is_zero(), f"vanishing obstruction but equation {name} fails"
        certified = None if report.cycle_closed else bound
        return TTPType3D("reducible", reducible_case_id(q), q, jnf.trace, certified)

    constraints = [
        ("e = 0", q.e.is_zero()),
        ("d = -1", q.d == -one),
        ("A = 1", q.A == one),
        ("E = -1", q.E == -one),
        ("b = (1-a)(2-B)", q.b == (one - q.a) * (fld.scalar(2) - q.B)),
    ]
    bad = next((name for name, ok in constraints if not ok), None)
    if bad is not None:
        return TTPType3D(
            "not_ttp",
            None,
            q,
            jnf.trace,
            None,
            Witness(
                "constraint_violated",
                f"nonzero second obstruction forces {bad}",
                {"constraint": bad},
            ),
        )
    assert g1 == g2.scale(one - q.a)
    ef = None
    if fld.characteristic() != 2:
        ef = EllipticForm.from_params(q.a, q.B, q.c, q.C)
    return TTPType3D("elliptic", None, q, jnf.trace, None, elliptic_form=ef)
