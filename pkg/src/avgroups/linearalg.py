"""Exact-rational linear layer: group algebras and Lie structure constants.

Group algebra elements are finitely supported maps from element index to
Fraction; zero coefficients never appear in the support.  The group algebra
carries the diagonal coproduct, the sum counit, and the inversion antipode,
which together feed the operator checks: an operator table is averaging on
the group exactly when its linear extension is averaging on the algebra and
a coalgebra map, and that equivalence is asserted, never assumed.  The Lie
side works over structure constants with exact arithmetic throughout; no
floating point enters this module.
"""

from fractions import Fraction
import itertools
import json
import random

from .structures import CheckReport, FiniteGroupTable, TableError, as_operator, validate_averaging


def _frac(v) -> Fraction:
    if isinstance(v, float):
        raise TableError("rational values must be exact (int or 'p/q' string)")
    try:
        return Fraction(str(v)) if isinstance(v, str) else Fraction(v)
    except (ValueError, ZeroDivisionError, TypeError):
        raise TableError(f"not a rational value: {v!r}") from None


def _norm(coeffs: dict) -> dict:
    return {k: v for k, v in coeffs.items() if v != 0}


def ga_basis(i: int) -> dict:
    return {i: Fraction(1)}


def ga_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, Fraction(0)) + v
    return _norm(out)


def ga_scale(q, a: dict) -> dict:
    q = _frac(q)
    return _norm({k: q * v for k, v in a.items()})


def ga_mul(a: dict, b: dict, g: FiniteGroupTable) -> dict:
    """Convolution product; the identity basis element is the unit."""
    n = len(g)
    out: dict = {}
    for i, ci in a.items():
        if not 0 <= i < n:
            raise TableError(f"support index {i} outside the carrier")
        for j, cj in b.items():
            if not 0 <= j < n:
                raise TableError(f"support index {j} outside the carrier")
            k = g.mul(i, j)
            out[k] = out.get(k, Fraction(0)) + ci * cj
    return _norm(out)


def _basis_images(g: FiniteGroupTable, A):
    """Images of the basis vectors under an operator.

    Accepts an index table (a set map, extended linearly) or an explicit
    list of group algebra elements, one per basis vector.
    """
    seq = list(A)
    if seq and isinstance(seq[0], dict):
        if len(seq) != len(g):
            raise TableError("one basis image per carrier element required")
        return [_norm({int(k): _frac(v) for k, v in img.items()}) for img in seq]
    return [ga_basis(i) for i in as_operator(g, seq)]


def linear_extend(g: FiniteGroupTable, A):
    """Linear operator on the group algebra from its basis images."""
    images = _basis_images(g, A)

    def apply(a: dict) -> dict:
        out: dict = {}
        for i, c in a.items():
            for k, v in images[i].items():
                out[k] = out.get(k, Fraction(0)) + c * v
        return _norm(out)

    return apply


def _random_element(rng, n: int) -> dict:
    out = {}
    for _ in range(rng.randint(1, 3)):
        out[rng.randrange(n)] = Fraction(rng.randint(-3, 3))
    return _norm(out)


def check_averaging_algebra(g: FiniteGroupTable, A, spot_checks: int = 100,
                            seed: int = 0) -> CheckReport:
    """P(a)P(b) = P(P(a)b) = P(aP(b)) on the group algebra.

    Both sides are bilinear, so basis pairs decide the law; the random
    non-basis pairs only guard the linear-extension plumbing.
    """
    P = linear_extend(g, A)
    n = len(g)

    def holds(a, b):
        lhs = ga_mul(P(a), P(b), g)
        return lhs == P(ga_mul(P(a), b, g)) and lhs == P(ga_mul(a, P(b), g))

    entries = []
    bad = None
    for i, j in itertools.product(range(n), repeat=2):
        if not holds(ga_basis(i), ga_basis(j)):
            bad = (i, j)
            break
    entries.append(("averaging on basis pairs", bad is None,
                    "" if bad is None else
                    f"fails at ({g.name(bad[0])}, {g.name(bad[1])})"))

    if bad is None:
        rng = random.Random(seed)
        spot_bad = None
        for t in range(spot_checks):
            a, b = _random_element(rng, n), _random_element(rng, n)
            if not holds(a, b):
                spot_bad = t
                break
        entries.append(("averaging on random combinations", spot_bad is None,
                        f"{spot_checks} pairs, seed {seed}" if spot_bad is None
                        else f"fails at sample {spot_bad}, seed {seed}"))
    return CheckReport(tuple(entries))


def coproduct(a: dict) -> dict:
    """Diagonal coproduct: each basis vector goes to its own tensor square."""
    return _norm({(i, i): c for i, c in a.items()})


def counit(a: dict) -> Fraction:
    return sum(a.values(), Fraction(0))


def _tensor_square(a: dict, b: dict) -> dict:
    out: dict = {}
    for i, ci in a.items():
        for j, cj in b.items():
            out[(i, j)] = out.get((i, j), Fraction(0)) + ci * cj
    return _norm(out)


def check_coalgebra_map(g: FiniteGroupTable, A, spot_checks: int = 20,
                        seed: int = 1) -> CheckReport:
    """Coproduct and counit compatibility of an operator on the algebra.

    Verifies cop(P(x)) = (P tensor P)(cop(x)) and counit(P(x)) = counit(x),
    on the basis and on random combinations.  Linear extensions of set maps
    always pass; genuinely spread-out operators can fail.
    """
    P = linear_extend(g, A)
    n = len(g)

    def tensor_P(t: dict) -> dict:
        out: dict = {}
        for (i, j), c in t.items():
            for (k, v) in _tensor_square(P(ga_basis(i)), P(ga_basis(j))).items():
                out[k] = out.get(k, Fraction(0)) + c * v
        return _norm(out)

    def cop_ok(x):
        return coproduct(P(x)) == tensor_P(coproduct(x))

    def counit_ok(x):
        return counit(P(x)) == counit(x)

    entries = []
    bad = next((i for i in range(n) if not cop_ok(ga_basis(i))), None)
    entries.append(("coproduct compatibility on basis", bad is None,
                    "" if bad is None else f"fails at {g.name(bad)}"))
    bad = next((i for i in range(n) if not counit_ok(ga_basis(i))), None)
    entries.append(("counit preservation on basis", bad is None,
                    "" if bad is None else f"fails at {g.name(bad)}"))

    if all(ok for _, ok, _ in entries):
        rng = random.Random(seed)
        spot_bad = None
        for t in range(spot_checks):
            x = _random_element(rng, n)
            if not cop_ok(x) or not counit_ok(x):
                spot_bad = t
                break
        entries.append(("compatibility on random combinations", spot_bad is None,
                        f"{spot_checks} samples, seed {seed}" if spot_bad is None
                        else f"fails at sample {spot_bad}, seed {seed}"))
    return CheckReport(tuple(entries))


def check_hopf_equivalence(g: FiniteGroupTable, A):
    """Group-level and algebra-level averaging verdicts, asserted equal.

    Returns (group_ok, algebra_ok).  The two verdicts must coincide; if
    they ever disagree that is a bug in one of the checkers, so the
    function raises instead of returning the pair.
    """
    A = as_operator(g, A)
    group_ok = validate_averaging(g, A).ok
    algebra_ok = check_averaging_algebra(g, A).ok and check_coalgebra_map(g, A).ok
    if group_ok != algebra_ok:
        raise RuntimeError(
            f"verdicts disagree on {A}: group {group_ok}, algebra {algebra_ok}")
    return group_ok, algebra_ok


def check_antipode_averaging(g: FiniteGroupTable) -> CheckReport:
    """Inversion as an operator: averaging whenever it is idempotent.

    S maps each basis vector to the inverse element.  S o S = S holds
    exactly when every element is self-inverse; only then is the averaging
    claim asserted.  Otherwise the report records the failed hypothesis and
    makes no claim either way.
    """
    inv = g.inverses()
    square_is_s = all(inv[inv[x]] == inv[x] for x in range(len(g)))
    if not square_is_s:
        bad = next(x for x in range(len(g)) if inv[inv[x]] != inv[x])
        return CheckReport((("S squared equals S", False,
                             f"fails at {g.name(bad)}; nothing to assert"),))
    entries = [("S squared equals S", True, "")]
    entries.extend(check_averaging_algebra(g, inv).entries)
    return CheckReport(tuple(entries))


class LieAlgebraSpec:
    """Structure constants c[i][j][k] for [e_i, e_j] = sum_k c[i][j][k] e_k."""

    def __init__(self, dim: int, constants):
        dim = int(dim)
        if dim < 1:
            raise TableError("Lie algebra dimension must be at least 1")
        c = []
        for i in range(dim):
            row = []
            for j in range(dim):
                cell = tuple(_frac(v) for v in constants[i][j])
                if len(cell) != dim:
                    raise TableError("structure constant array must be dim^3")
                row.append(cell)
            c.append(tuple(row))
        self.dim = dim
        self.c = tuple(c)

    @classmethod
    def from_brackets(cls, dim: int, brackets: dict):
        """Build from sparse {(i, j): {k: value}} data, zero-based.

        A pair whose mirror is absent gets the antisymmetric counterpart
        filled in; explicitly given mirrors are kept as written.
        """
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), coeffs in brackets.items():
            for k, v in coeffs.items():
                c[i][j][k] = _frac(v)
        for (i, j), coeffs in brackets.items():
            if (j, i) not in brackets:
                for k, v in coeffs.items():
                    c[j][i][k] = -_frac(v)
        return cls(dim, c)

    def bracket(self, x, y):
        """[x, y] on coefficient tuples."""
        d = self.dim
        out = [Fraction(0)] * d
        for i in range(d):
            if x[i] == 0:
                continue
            for j in range(d):
                if y[j] == 0:
                    continue
                for k in range(d):
                    out[k] += x[i] * y[j] * self.c[i][j][k]
        return tuple(out)

    def basis(self, i: int):
        return tuple(Fraction(1) if j == i else Fraction(0) for j in range(self.dim))

    def zero(self):
        return (Fraction(0),) * self.dim


def validate_lie(L: LieAlgebraSpec) -> CheckReport:
    """Antisymmetry and the Jacobi identity on basis vectors."""
    d = L.dim
    entries = []
    bad = None
    for i, j, k in itertools.product(range(d), repeat=3):
        if L.c[i][j][k] != -L.c[j][i][k]:
            bad = (i, j)
            break
    entries.append(("antisymmetry", bad is None,
                    "" if bad is None else f"fails at (e{bad[0]+1}, e{bad[1]+1})"))
    bad = None
    for i, j, k in itertools.product(range(d), repeat=3):
        ei, ej, ek = L.basis(i), L.basis(j), L.basis(k)
        total = tuple(
            a + b + c for a, b, c in zip(
                L.bracket(ei, L.bracket(ej, ek)),
                L.bracket(ej, L.bracket(ek, ei)),
                L.bracket(ek, L.bracket(ei, ej))))
        if any(v != 0 for v in total):
            bad = (i, j, k)
            break
    entries.append(("Jacobi", bad is None,
                    "" if bad is None else
                    f"fails at (e{bad[0]+1}, e{bad[1]+1}, e{bad[2]+1})"))
    return CheckReport(tuple(entries))


def mat_apply(M, v):
    """Row-major matrix action: result_i = sum_j M[i][j] v[j]."""
    d = len(v)
    return tuple(sum((M[i][j] * v[j] for j in range(d)), Fraction(0)) for i in range(d))


def as_matrix(dim: int, M):
    rows = []
    for row in M:
        if not isinstance(row, (list, tuple)):
            raise TableError("operator matrix rows must be lists")
        row = tuple(_frac(v) for v in row)
        if len(row) != dim:
            raise TableError("operator matrix must match the algebra dimension")
        rows.append(row)
    if len(rows) != dim:
        raise TableError("operator matrix must match the algebra dimension")
    return tuple(rows)


def check_averaging_lie(L: LieAlgebraSpec, M) -> CheckReport:
    """[A e_i, A e_j] = A([A e_i, e_j]) = A([e_i, A e_j]) on basis pairs.

    The identity is bilinear, so basis pairs decide it.  The Lie spec is
    validated first; an invalid spec is an error, not a report entry.
    """
    rep = validate_lie(L)
    if not rep.ok:
        raise TableError("; ".join(rep.lines()))
    M = as_matrix(L.dim, M)
    bad = None
    for i, j in itertools.product(range(L.dim), repeat=2):
        ei, ej = L.basis(i), L.basis(j)
        lhs = L.bracket(mat_apply(M, ei), mat_apply(M, ej))
        mid = mat_apply(M, L.bracket(mat_apply(M, ei), ej))
        rhs = mat_apply(M, L.bracket(ei, mat_apply(M, ej)))
        if lhs != mid or lhs != rhs:
            bad = (i, j)
            break
    return CheckReport((("averaging on basis pairs", bad is None,
                         "" if bad is None else
                         f"fails at (e{bad[0]+1}, e{bad[1]+1})"),))


def leibniz_bracket(L: LieAlgebraSpec, M):
    """The derived bracket {x, y} = [A(x), y]."""
    M = as_matrix(L.dim, M)

    def br(x, y):
        return L.bracket(mat_apply(M, x), y)

    return br


def check_leibniz(L: LieAlgebraSpec, M) -> CheckReport:
    """Left Leibniz law {x,{y,z}} = {{x,y},z} + {y,{x,z}} on basis triples."""
    rep = validate_lie(L)
    if not rep.ok:
        raise TableError("; ".join(rep.lines()))
    br = leibniz_bracket(L, M)
    bad = None
    for i, j, k in itertools.product(range(L.dim), repeat=3):
        x, y, z = L.basis(i), L.basis(j), L.basis(k)
        lhs = br(x, br(y, z))
        rhs = tuple(a + b for a, b in zip(br(br(x, y), z), br(y, br(x, z))))
        if lhs != rhs:
            bad = (i, j, k)
            break
    return CheckReport((("left Leibniz on basis triples", bad is None,
                         "" if bad is None else
                         f"fails at (e{bad[0]+1}, e{bad[1]+1}, e{bad[2]+1})"),))


def load_lie_file(source) -> LieAlgebraSpec:
    """Read {"dim": d, "brackets": [{"i":1,"j":2,"coeffs":{"2":"1"}}]} data.

    Indices are one-based in the file; rationals are "p/q" strings or
    integers.  Pairs without an explicit mirror are completed
    antisymmetrically.
    """
    data = _load_json(source)
    if not isinstance(data, dict) or "dim" not in data:
        raise TableError("Lie file needs 'dim' and 'brackets'")
    dim = _as_int(data["dim"], "'dim'")
    entries = data.get("brackets", ())
    if not isinstance(entries, (list, tuple)):
        raise TableError("'brackets' must be a list of {'i','j','coeffs'} entries")
    brackets = {}
    for entry in entries:
        if not isinstance(entry, dict) or "i" not in entry or "j" not in entry:
            raise TableError(f"malformed bracket entry {entry!r}")
        i = _as_int(entry["i"], "'i'") - 1
        j = _as_int(entry["j"], "'j'") - 1
        if not (0 <= i < dim and 0 <= j < dim):
            raise TableError(f"bracket index out of range in {entry!r}")
        coeffs = {}
        for k, v in entry.get("coeffs", {}).items():
            k = _as_int(k, "coefficient index") - 1
            if not 0 <= k < dim:
                raise TableError(f"coefficient index out of range in {entry!r}")
            coeffs[k] = _frac(v)
        if (i, j) in brackets:
            raise TableError(f"duplicate bracket entry for (e{i+1}, e{j+1})")
        brackets[(i, j)] = coeffs
    return LieAlgebraSpec.from_brackets(dim, brackets)


def load_operator_file(source, dim: int = None):
    """Read {"dim": d, "matrix": [...]} with row-major rational strings."""
    data = _load_json(source)
    if not isinstance(data, dict) or "matrix" not in data:
        raise TableError("operator file needs 'dim' and 'matrix'")
    d = _as_int(data.get("dim", dim or 0), "'dim'")
    if dim is not None and d != dim:
        raise TableError(f"operator dimension {d} does not match algebra dimension {dim}")
    flat = data["matrix"]
    if not isinstance(flat, (list, tuple)):
        raise TableError("'matrix' must be a list")
    if flat and isinstance(flat[0], (list, tuple)):
        return as_matrix(d, flat)
    if len(flat) != d * d:
        raise TableError("flat matrix must have dim*dim entries")
    return as_matrix(d, [flat[r * d:(r + 1) * d] for r in range(d)])


def _load_json(source):
    if isinstance(source, dict):
        return source
    if hasattr(source, "read"):
        return json.load(source)
    with open(source, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _as_int(v, what):
    # bool is an int subclass; JSON true/false are not indices
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise TableError(f"{what} must be an integer, got {v!r}")
    try:
        return int(v)
    except ValueError:
        raise TableError(f"{what} must be an integer, got {v!r}") from None
