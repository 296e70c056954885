"""Finite averaging groups over explicit multiplication tables.

A group is given as a table of element names and a square index table for
the product.  The identity and the inverses are inferred from the table and
double checked, never declared.  An operator is a plain index map.  The
module validates group and averaging axioms by brute force, constructs the
standard operator families (central shifts, idempotent endomorphisms,
commuting compositions), searches small carriers exhaustively, and checks
the derived structure: pointed-operator consequences, the induced
disemigroup, and the conjugation rack.
"""

from dataclasses import dataclass
import itertools
import json


class TableError(ValueError):
    """Malformed table data or an unsatisfiable construction."""


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a structured verification: (law, ok, detail) entries."""

    entries: tuple

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.entries)

    def lines(self):
        out = []
        for law, ok, detail in self.entries:
            mark = "ok" if ok else "FAIL"
            out.append(f"{law}: {mark}" + (f" {detail}" if detail else ""))
        return out

    def entry(self, law):
        for name, ok, detail in self.entries:
            if name == law:
                return ok, detail
        raise KeyError(law)


class FiniteGroupTable:
    """Multiplication table over named elements.

    Construction checks shape only; axioms are the job of validate_group.
    identity() and inverses() infer their data from the table and raise
    TableError when the table does not determine them.
    """

    def __init__(self, elements, mul):
        elements = tuple(str(e) for e in elements)
        if len(set(elements)) != len(elements):
            raise TableError("element names must be unique")
        if not elements:
            raise TableError("empty carrier")
        n = len(elements)
        rows = []
        for row in mul:
            row = tuple(int(v) for v in row)
            if len(row) != n or any(not 0 <= v < n for v in row):
                raise TableError("mul table must be a square of indices in range")
            rows.append(row)
        if len(rows) != n:
            raise TableError("mul table must be a square of indices in range")
        self.elements = elements
        self.mul_table = tuple(rows)

    def __len__(self):
        return len(self.elements)

    def index(self, name) -> int:
        try:
            return self.elements.index(str(name))
        except ValueError:
            raise TableError(f"unknown element {name!r}") from None

    def name(self, i: int) -> str:
        return self.elements[i]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def identity(self) -> int:
        for e in range(len(self)):
            if all(self.mul(e, x) == x and self.mul(x, e) == x for x in range(len(self))):
                return e
        raise TableError("table has no two-sided identity")

    def inverses(self):
        e = self.identity()
        inv = []
        for a in range(len(self)):
            for b in range(len(self)):
                if self.mul(a, b) == e and self.mul(b, a) == e:
                    inv.append(b)
                    break
            else:
                raise TableError(f"element {self.name(a)!r} has no inverse")
        return tuple(inv)

    def inv(self, a: int) -> int:
        return self.inverses()[a]


def validate_group(t: FiniteGroupTable, max_size: int = 24) -> CheckReport:
    """Brute-force group axioms; the first failing witness is named."""
    n = len(t)
    if n > max_size:
        raise TableError(f"carrier size {n} exceeds the exhaustive-check cap {max_size}")
    entries = []

    try:
        e = t.identity()
        entries.append(("identity", True, f"inferred {t.name(e)!r}"))
    except TableError as exc:
        entries.append(("identity", False, str(exc)))
        return CheckReport(tuple(entries))

    try:
        t.inverses()
        entries.append(("inverses", True, ""))
    except TableError as exc:
        entries.append(("inverses", False, str(exc)))

    assoc_fail = None
    for a, b, c in itertools.product(range(n), repeat=3):
        if t.mul(t.mul(a, b), c) != t.mul(a, t.mul(b, c)):
            assoc_fail = (a, b, c)
            break
    if assoc_fail is None:
        entries.append(("associativity", True, ""))
    else:
        a, b, c = assoc_fail
        entries.append(("associativity", False,
                        f"fails at ({t.name(a)}, {t.name(b)}, {t.name(c)})"))
    return CheckReport(tuple(entries))


def as_operator(t: FiniteGroupTable, op) -> tuple:
    """Normalize an operator to an index tuple, total on the carrier."""
    op = tuple(int(v) for v in op)
    n = len(t)
    if len(op) != n or any(not 0 <= v < n for v in op):
        raise TableError("operator must map every element to an element")
    return op


def validate_averaging(t: FiniteGroupTable, op) -> CheckReport:
    """Check A(g)A(h) = A(A(g)h) = A(gA(h)) on all pairs."""
    op = as_operator(t, op)
    n = len(t)
    for g, h in itertools.product(range(n), repeat=2):
        lhs = t.mul(op[g], op[h])
        mid = op[t.mul(op[g], h)]
        rhs = op[t.mul(g, op[h])]
        if lhs != mid or lhs != rhs:
            return CheckReport((("averaging", False,
                                 f"fails at ({t.name(g)}, {t.name(h)})"),))
    return CheckReport((("averaging", True, ""),))


class AveragingGroupHandle:
    """A validated (table, operator) pair, usable as an evaluation target.

    The evaluation protocol works on element indices: identity(), mul(),
    inv(), op().
    """

    def __init__(self, table: FiniteGroupTable, op):
        rep = validate_group(table)
        if not rep.ok:
            raise TableError("; ".join(rep.lines()))
        op = as_operator(table, op)
        rep = validate_averaging(table, op)
        if not rep.ok:
            raise TableError("; ".join(rep.lines()))
        self.table = table
        self.op_table = op

    def identity(self) -> int:
        return self.table.identity()

    def mul(self, a: int, b: int) -> int:
        return self.table.mul(a, b)

    def inv(self, a: int) -> int:
        return self.table.inv(a)

    def op(self, a: int) -> int:
        return self.op_table[a]

    def element(self, name) -> int:
        return self.table.index(name)

    def name(self, i: int) -> str:
        return self.table.name(i)

    def is_pointed(self) -> bool:
        return self.op(self.identity()) == self.identity()


class IntShiftGroup:
    """The integers with A(a) = a + z; averaging by two-line arithmetic."""

    def __init__(self, z: int):
        self.z = int(z)

    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        return a + b

    def inv(self, a: int) -> int:
        return -a

    def op(self, a: int) -> int:
        return a + self.z

    def element(self, name) -> int:
        return int(name)

    def name(self, i: int) -> str:
        return str(i)

    def is_pointed(self) -> bool:
        return self.z == 0


def shift_operator(t: FiniteGroupTable, z) -> AveragingGroupHandle:
    """A(h) = z*h for a central z; centrality is checked, not assumed."""
    zi = z if isinstance(z, int) else t.index(z)
    for x in range(len(t)):
        if t.mul(zi, x) != t.mul(x, zi):
            raise TableError(
                f"shift element {t.name(zi)!r} is not central: "
                f"fails against {t.name(x)!r}")
    op = tuple(t.mul(zi, x) for x in range(len(t)))
    return AveragingGroupHandle(t, op)


def idempotent_endo_operator(t: FiniteGroupTable, phi) -> AveragingGroupHandle:
    """A = an idempotent group endomorphism; both properties checked."""
    phi = as_operator(t, phi)
    n = len(t)
    for a, b in itertools.product(range(n), repeat=2):
        if phi[t.mul(a, b)] != t.mul(phi[a], phi[b]):
            raise TableError(
                f"not a homomorphism: fails at ({t.name(a)}, {t.name(b)})")
    for a in range(n):
        if phi[phi[a]] != phi[a]:
            raise TableError(f"not idempotent: fails at {t.name(a)}")
    return AveragingGroupHandle(t, phi)


def compose_operators(g, a1, a2) -> AveragingGroupHandle:
    """Composite A1 o A2 of two commuting averaging operators.

    Accepts a table or a handle for the carrier.  Each factor is validated
    as averaging, commutation is checked, and the composite handle is
    validated again rather than trusted.
    """
    t = g.table if isinstance(g, AveragingGroupHandle) else g
    a1 = as_operator(t, a1)
    a2 = as_operator(t, a2)
    for op in (a1, a2):
        rep = validate_averaging(t, op)
        if not rep.ok:
            raise TableError("; ".join(rep.lines()))
    for x in range(len(t)):
        if a1[a2[x]] != a2[a1[x]]:
            raise TableError(f"operators do not commute: fail at {t.name(x)!r}")
    comp = tuple(a1[a2[x]] for x in range(len(t)))
    return AveragingGroupHandle(t, comp)


def check_pointed_consequences(h: AveragingGroupHandle) -> CheckReport:
    """Idempotence, inverse preservation, and Ad-equivariance of A.

    All three follow from A(e) = e; a non-pointed handle gets a single
    inapplicable entry instead of law checks.
    """
    t, A = h.table, h.op_table
    e = t.identity()
    if A[e] != e:
        return CheckReport((("pointed", False,
                             f"A(e) = {t.name(A[e])!r}; consequences inapplicable"),))
    entries = [("pointed", True, "")]
    n = len(t)

    bad = next((g for g in range(n) if A[A[g]] != A[g]), None)
    entries.append(("idempotence", bad is None,
                    "" if bad is None else f"fails at {t.name(bad)}"))

    bad = next((g for g in range(n) if t.inv(A[g]) != A[t.inv(A[g])]), None)
    entries.append(("inverse preservation", bad is None,
                    "" if bad is None else f"fails at {t.name(bad)}"))

    bad = None
    for g, k in itertools.product(range(n), repeat=2):
        lhs = t.mul(t.mul(A[g], A[k]), t.inv(A[g]))
        rhs = A[t.mul(t.mul(A[g], k), t.inv(A[g]))]
        if lhs != rhs:
            bad = (g, k)
            break
    entries.append(("Ad-equivariance", bad is None,
                    "" if bad is None else f"fails at ({t.name(bad[0])}, {t.name(bad[1])})"))
    return CheckReport(tuple(entries))


def disemigroup_ops(h):
    """The pair (left, right): g -| h = g A(h) and g |- h = A(g) h."""
    def left(g, k):
        return h.mul(g, h.op(k))

    def right(g, k):
        return h.mul(h.op(g), k)

    return left, right


def check_disemigroup(h: AveragingGroupHandle) -> CheckReport:
    """The five disemigroup identities, plus dimonoid units when pointed."""
    left, right = disemigroup_ops(h)
    n = len(h.table)
    t = h.table
    laws = (
        ("(f-|g)-|h = f-|(g-|h)", lambda f, g, k: left(left(f, g), k) == left(f, left(g, k))),
        ("(f-|g)-|h = f-|(g|-h)", lambda f, g, k: left(left(f, g), k) == left(f, right(g, k))),
        ("(f|-g)-|h = f|-(g-|h)", lambda f, g, k: left(right(f, g), k) == right(f, left(g, k))),
        ("(f-|g)|-h = f|-(g|-h)", lambda f, g, k: right(left(f, g), k) == right(f, right(g, k))),
        ("(f|-g)|-h = f|-(g|-h)", lambda f, g, k: right(right(f, g), k) == right(f, right(g, k))),
    )
    entries = []
    for name, law in laws:
        bad = None
        for f, g, k in itertools.product(range(n), repeat=3):
            if not law(f, g, k):
                bad = (f, g, k)
                break
        entries.append((name, bad is None,
                        "" if bad is None else
                        f"fails at ({t.name(bad[0])}, {t.name(bad[1])}, {t.name(bad[2])})"))

    e = t.identity()
    bad = next((g for g in range(n)
                if left(g, e) != g or right(e, g) != g), None)
    detail = ""
    if bad is not None:
        detail = f"fails at {t.name(bad)}"
        if not h.is_pointed():
            detail += " (not pointed)"
    entries.append(("dimonoid units", bad is None, detail))
    return CheckReport(tuple(entries))


def rack_op(h: AveragingGroupHandle, g: int, k: int) -> int:
    """g |> k = A(g) k A(g)^{-1}; requires a pointed operator."""
    if not h.is_pointed():
        raise TableError("rack structure needs A(e) = e")
    ag = h.op(g)
    return h.mul(h.mul(ag, k), h.inv(ag))


def check_rack(h: AveragingGroupHandle) -> CheckReport:
    """Self-distributivity and bijectivity of every left translation."""
    if not h.is_pointed():
        e = h.identity()
        return CheckReport((("pointed", False,
                             f"A(e) = {h.name(h.op(e))!r}; rack inapplicable"),))
    n = len(h.table)
    t = h.table
    entries = [("pointed", True, "")]

    bad = None
    for f, g, k in itertools.product(range(n), repeat=3):
        if rack_op(h, f, rack_op(h, g, k)) != rack_op(h, rack_op(h, f, g), rack_op(h, f, k)):
            bad = (f, g, k)
            break
    entries.append(("self-distributivity", bad is None,
                    "" if bad is None else
                    f"fails at ({t.name(bad[0])}, {t.name(bad[1])}, {t.name(bad[2])})"))

    bad = next((g for g in range(n)
                if len({rack_op(h, g, k) for k in range(n)}) != n), None)
    entries.append(("translation bijectivity", bad is None,
                    "" if bad is None else f"L_{t.name(bad)} is not a bijection"))
    return CheckReport(tuple(entries))


def search_averaging_ops(t: FiniteGroupTable, pointed_only: bool = False,
                         max_size: int = 6):
    """All operator tables satisfying the averaging law, in index order.

    The search space is |G|^|G|, so the carrier is capped.  Every hit is
    re-validated through the ordinary checker before being returned.
    """
    n = len(t)
    if n > max_size:
        raise TableError(f"carrier size {n} exceeds the search cap {max_size}")
    e = t.identity()
    found = []
    for op in itertools.product(range(n), repeat=n):
        if pointed_only and op[e] != e:
            continue
        ok = True
        for g, k in itertools.product(range(n), repeat=2):
            lhs = t.mul(op[g], op[k])
            if lhs != op[t.mul(op[g], k)] or lhs != op[t.mul(g, op[k])]:
                ok = False
                break
        if ok and validate_averaging(t, op).ok:
            found.append(op)
    return found


def cyclic_group(n: int) -> FiniteGroupTable:
    """Z_n with elements named 0..n-1."""
    if n < 1:
        raise TableError("cyclic group needs n >= 1")
    return FiniteGroupTable([str(i) for i in range(n)],
                            [[(i + j) % n for j in range(n)] for i in range(n)])


def klein_four_group() -> FiniteGroupTable:
    """Z_2 x Z_2 with the classical e,a,b,c naming."""
    names = ["e", "a", "b", "c"]
    pairs = [(0, 0), (1, 0), (0, 1), (1, 1)]
    idx = {p: i for i, p in enumerate(pairs)}
    mul = [[idx[((p[0] + q[0]) % 2, (p[1] + q[1]) % 2)] for q in pairs] for p in pairs]
    return FiniteGroupTable(names, mul)


_S3_PERMS = (
    ("e", (0, 1, 2)),
    ("(12)", (1, 0, 2)),
    ("(13)", (2, 1, 0)),
    ("(23)", (0, 2, 1)),
    ("(123)", (1, 2, 0)),
    ("(132)", (2, 0, 1)),
)


def sym3() -> FiniteGroupTable:
    """S_3 in cycle notation; the product applies the right factor first."""
    perms = [p for _, p in _S3_PERMS]
    names = [n for n, _ in _S3_PERMS]

    def compose(p, q):
        return tuple(p[q[i]] for i in range(3))

    mul = [[perms.index(compose(p, q)) for q in perms] for p in perms]
    return FiniteGroupTable(names, mul)


def sym3_sign_retraction() -> tuple:
    """Retraction of S_3 onto {e, (12)}: even to e, odd to (12)."""
    odd = {"(12)", "(13)", "(23)"}
    names = [n for n, _ in _S3_PERMS]
    return tuple(names.index("(12)") if n in odd else names.index("e") for n in names)


def load_group_file(source):
    """Read {"elements": [...], "mul": [[...]], "op": {...}} data.

    Accepts a path, a file object, or an already-parsed dict.  The optional
    "op" block maps element names to element names.  Returns (table, op or
    None); the identity and inverses are inferred by the table itself.
    """
    if isinstance(source, dict):
        data = source
    elif hasattr(source, "read"):
        data = json.load(source)
    else:
        with open(source, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    if not isinstance(data, dict) or "elements" not in data or "mul" not in data:
        raise TableError("group file needs 'elements' and 'mul'")
    try:
        table = FiniteGroupTable(data["elements"], data["mul"])
    except TableError:
        raise
    except (ValueError, TypeError) as exc:
        raise TableError(f"'mul' must be a row-major table of element indices: {exc}") from None
    op = None
    if data.get("op") is not None:
        raw = data["op"]
        if not isinstance(raw, dict):
            raise TableError("'op' must map element names to element names")
        op_list = [None] * len(table)
        for k, v in raw.items():
            op_list[table.index(k)] = table.index(v)
        if any(v is None for v in op_list):
            missing = [table.name(i) for i, v in enumerate(op_list) if v is None]
            raise TableError(f"'op' is not total; missing {missing}")
        op = tuple(op_list)
    return table, op
