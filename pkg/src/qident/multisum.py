"""The generic q-multi-sum family H(beta) and its recurrence machinery.

A spec fixes a symmetric quadratic form ``alpha`` (diagonal entries read as
coefficients of binom(n_r, 2)), Pochhammer bases ``q^{A_r}``, and one exponent
vector ``gamma_j`` per non-q variable.  For an integer vector beta,

    H(beta) = sum over n in N^R of
        prod_j x_j^(gamma_j . n) / prod_r (q^{A_r}; q^{A_r})_{n_r}
        * q^( sum_r alpha_rr*binom(n_r,2) + sum_{i<j} alpha_ij n_i n_j
              + sum_r beta_r n_r )

Each index value multiplies in a single monomial and a univariate factor
1/(q^{A_r};q^{A_r})_{n_r}, so evaluation walks the index tree keeping a
(monomial, univariate series) pair and prunes any prefix whose guaranteed
minimal q-degree already exceeds the truncation order.

``rec_step`` splits a node in two exactly as the one-coordinate recurrence
does (raise beta_r by A_r, or absorb a monomial weight and add alpha's r-th
row), and ``verify_matrix_relation`` checks the seven-row closure of the
quinvariate family both symbolically (leaf multisets) and numerically.
"""

from __future__ import annotations

from dataclasses import dataclass

from .report import IdentityReport
from .series import QUIN_VARS, Mono, Series, SeriesError, VarSet, mono_mul


class NonTerminatingSum(SeriesError):
    """Some index direction never raises the q-degree; the sum cannot truncate."""


@dataclass(frozen=True)
class MultiSumSpec:
    alpha: tuple[tuple[int, ...], ...]
    bases: tuple[int, ...]
    gammas: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rank = len(self.bases)
        if len(self.alpha) != rank or any(len(row) != rank for row in self.alpha):
            raise SeriesError("alpha must be R x R")
        for i in range(rank):
            for j in range(rank):
                if self.alpha[i][j] < 0:
                    raise SeriesError("alpha entries must be >= 0")
                if self.alpha[i][j] != self.alpha[j][i]:
                    raise SeriesError("alpha must be symmetric")
        if any(a < 1 for a in self.bases):
            raise SeriesError("Pochhammer bases must be >= 1")
        for g in self.gammas:
            if len(g) != rank:
                raise SeriesError("gamma vectors must have length R")
            if any(e < 0 for e in g):
                raise SeriesError("gamma entries must be >= 0")

    @property
    def rank(self) -> int:
        return len(self.bases)


@dataclass(frozen=True)
class SumNode:
    """A weighted evaluation point: weight monomial times H(beta)."""

    weight: Mono
    beta: tuple[int, ...]


def _check_vars(spec: MultiSumSpec, vars: VarSet) -> list[int]:
    """Positions of the non-q variables, one per gamma vector, in order."""
    positions = [i for i in range(vars.arity) if i != vars.trunc_var]
    if len(positions) != len(spec.gammas):
        raise SeriesError(
            f"spec has {len(spec.gammas)} gamma vectors but {vars.names} has "
            f"{len(positions)} non-truncation variables"
        )
    return positions


def _check_beta(spec: MultiSumSpec, beta: tuple[int, ...]) -> None:
    if len(beta) != spec.rank:
        raise SeriesError(f"beta {beta} must have length {spec.rank}")
    for r in range(spec.rank):
        if beta[r] < 0:
            raise SeriesError(f"beta[{r}] = {beta[r]} would give terms of negative q-degree")
        if spec.alpha[r][r] == 0 and beta[r] == 0:
            raise NonTerminatingSum(
                f"index {r}: alpha[{r}][{r}] = 0 and beta[{r}] = 0 never raise the q-degree"
            )


class _InvPochCache:
    """Coefficient lists of 1/(q^base; q^base)_n, built by knapsack extension."""

    def __init__(self, order: int):
        self.order = order
        self._lists: dict[tuple[int, int], list[int]] = {}

    def get(self, base: int, n: int) -> list[int]:
        key = (base, n)
        got = self._lists.get(key)
        if got is not None:
            return got
        if n == 0:
            lst = [1] + [0] * self.order
        else:
            lst = list(self.get(base, n - 1))
            part = base * n
            for j in range(part, self.order + 1):
                lst[j] += lst[j - part]
        self._lists[key] = lst
        return lst


def _conv(u: list[int], v: list[int], limit: int) -> list[int]:
    out = [0] * min(len(u) + len(v) - 1, limit + 1)
    top = len(out)
    for i, a in enumerate(u):
        if a == 0 or i >= top:
            continue
        stop = min(len(v), top - i)
        for j in range(stop):
            if v[j]:
                out[i + j] += a * v[j]
    return out


def eval_sum(
    spec: MultiSumSpec, beta: tuple[int, ...], vars: VarSet, order: int
) -> Series:
    """H(beta) truncated at ``order``, with per-prefix lower-bound pruning."""
    beta = tuple(beta)
    _check_beta(spec, beta)
    positions = _check_vars(spec, vars)
    qi = vars.trunc_var
    rank = spec.rank
    arity = vars.arity
    cache = _InvPochCache(order)
    # Exponent increment on the non-q variables when index r advances by one.
    col_step: list[Mono] = []
    for r in range(rank):
        vec = [0] * arity
        for j, pos in enumerate(positions):
            vec[pos] = spec.gammas[j][r]
        col_step.append(tuple(vec))
    acc: dict[Mono, int] = {}

    def emit(mono: list[int], qdeg: int, uni: list[int]) -> None:
        for e, c in enumerate(uni):
            if c == 0 or qdeg + e > order:
                continue
            key = list(mono)
            key[qi] = qdeg + e
            k = tuple(key)
            s = acc.get(k, 0) + c
            if s:
                acc[k] = s
            else:
                del acc[k]

    def walk(r: int, qdeg: int, mono: list[int], uni: list[int], chosen: tuple[int, ...]) -> None:
        if r == rank:
            emit(mono, qdeg, uni)
            return
        lin = beta[r] + sum(spec.alpha[i][r] * chosen[i] for i in range(r))
        diag = spec.alpha[r][r]
        n = 0
        while True:
            d = diag * (n * (n - 1) // 2) + lin * n
            total = qdeg + d
            if total > order:
                break
            child_mono = mono if n == 0 else [
                e + n * s for e, s in zip(mono, col_step[r])
            ]
            child_uni = uni if n == 0 else _conv(uni, cache.get(spec.bases[r], n), order - total)
            walk(r + 1, total, list(child_mono), child_uni, chosen + (n,))
            n += 1

    walk(0, 0, [0] * arity, [1], ())
    return Series._raw(vars, order, acc)


def node_value(spec: MultiSumSpec, vars: VarSet, node: SumNode, order: int) -> Series:
    """weight * H(beta) as a truncated series."""
    return eval_sum(spec, node.beta, vars, order).mul_monomial(node.weight)


def rec_step(
    spec: MultiSumSpec, vars: VarSet, node: SumNode, r: int
) -> tuple[SumNode, SumNode]:
    """Split H(..., beta_r, ...) on coordinate r (1-based).

    The first child raises beta_r by A_r; the second absorbs the edge monomial
    prod_j x_j^{gamma_{j,r}} * q^{beta_r} and adds alpha's r-th row to beta.
    The values satisfy value(node) = value(child1) + value(child2).
    """
    if not 1 <= r <= spec.rank:
        raise SeriesError(f"coordinate {r} out of range 1..{spec.rank}")
    positions = _check_vars(spec, vars)
    idx = r - 1
    beta = node.beta
    if beta[idx] < 0:
        raise SeriesError(f"beta[{idx}] = {beta[idx]} < 0: edge weight q-exponent must stay >= 0")
    child1 = SumNode(node.weight, beta[:idx] + (beta[idx] + spec.bases[idx],) + beta[idx + 1 :])
    edge = [0] * vars.arity
    edge[vars.trunc_var] = beta[idx]
    for j, pos in enumerate(positions):
        edge[pos] = spec.gammas[j][idx]
    child2 = SumNode(
        mono_mul(node.weight, tuple(edge)),
        tuple(b + spec.alpha[idx][i] for i, b in enumerate(beta)),
    )
    return child1, child2


def expand_tree(
    spec: MultiSumSpec, vars: VarSet, root: tuple[int, ...], plan: list[int]
) -> list[SumNode]:
    """Expand along a chain of coordinate choices; every split-off node is a leaf.

    Each plan entry expands the current first child; the sum of leaf values
    equals H(root).  An empty plan returns the root itself with unit weight.
    """
    current = SumNode((0,) * vars.arity, tuple(root))
    side: list[SumNode] = []
    for r in plan:
        current, split = rec_step(spec, vars, current, r)
        side.append(split)
    return [current] + side[::-1]


def shift_beta_for_x(
    spec: MultiSumSpec, beta: tuple[int, ...], s: int, gamma_row: int = 0
) -> tuple[int, ...]:
    """beta for the substitution x_j -> x_j * q^s (j = gamma_row, default first)."""
    if s < 0:
        raise SeriesError("shift must be >= 0")
    g = spec.gammas[gamma_row]
    return tuple(b + s * e for b, e in zip(beta, g))


# -- the quinvariate family and its seven-row closure ---------------------------

#: Quadratic form, Pochhammer bases, and variable exponents of the quinvariate
#: family generating the gap-4 overpartition statistics.
def quinvariate_spec() -> MultiSumSpec:
    return MultiSumSpec(
        alpha=((4, 4, 4, 4), (4, 6, 4, 4), (4, 4, 4, 4), (4, 4, 4, 8)),
        bases=(2, 2, 4, 4),
        gammas=((1, 1, 1, 1), (0, 0, 1, 0), (0, 0, 0, 1), (0, 1, 0, 0)),
    )


#: Left-hand beta vectors of the closure relation, one per automaton block.
RELATION_BETAS: tuple[tuple[int, int, int, int], ...] = (
    (1, 1, 2, 4),
    (1, 3, 2, 4),
    (1, 3, 2, 4),
    (3, 3, 2, 4),
    (3, 5, 6, 4),
    (3, 5, 6, 4),
    (5, 5, 6, 8),
)

#: 0/1 incidence of the closure relation (which shifted columns feed each row).
RELATION_MATRIX: tuple[tuple[int, ...], ...] = (
    (1, 1, 1, 1, 1, 1, 1),
    (1, 1, 0, 1, 1, 1, 1),
    (1, 1, 0, 1, 1, 1, 1),
    (1, 0, 0, 1, 1, 1, 1),
    (1, 0, 0, 0, 1, 0, 1),
    (1, 0, 0, 0, 1, 0, 1),
    (1, 0, 0, 0, 0, 0, 0),
)

#: Diagonal weight monomials (1, xq, xzq, xy1q^2, xq^3, xzq^3, xy2q^4).
RELATION_WEIGHTS: tuple[Mono, ...] = (
    QUIN_VARS.m(),
    QUIN_VARS.m(x=1, q=1),
    QUIN_VARS.m(x=1, z=1, q=1),
    QUIN_VARS.m(x=1, y1=1, q=2),
    QUIN_VARS.m(x=1, q=3),
    QUIN_VARS.m(x=1, z=1, q=3),
    QUIN_VARS.m(x=1, y2=1, q=4),
)

#: Coordinate chains whose leaf multisets realize each row of the relation.
#: Only the first row's chain is forced; the rest were found by hand and are
#: certified by the exact leaf comparison below.
RELATION_PLANS: tuple[tuple[int, ...], ...] = (
    (2, 1, 3, 2, 1, 4),
    (1, 3, 2, 1, 4),
    (1, 3, 2, 1, 4),
    (3, 2, 1, 4),
    (1, 4),
    (1, 4),
    (),
)


def verify_matrix_relation(
    spec: MultiSumSpec | None = None,
    vars: VarSet = QUIN_VARS,
    order: int = 24,
) -> IdentityReport:
    """Check all seven rows symbolically (leaf multisets) and numerically."""
    if spec is None:
        spec = quinvariate_spec()
    witness: str | None = None
    evals: dict[tuple[int, ...], Series] = {}

    def value(beta: tuple[int, ...]) -> Series:
        if beta not in evals:
            evals[beta] = eval_sum(spec, beta, vars, order)
        return evals[beta]

    for k in range(len(RELATION_BETAS)):
        row_beta = RELATION_BETAS[k]
        expected = sorted(
            (RELATION_WEIGHTS[j], shift_beta_for_x(spec, RELATION_BETAS[j], 4))
            for j in range(7)
            if RELATION_MATRIX[k][j]
        )
        leaves = expand_tree(spec, vars, row_beta, list(RELATION_PLANS[k]))
        got = sorted((leaf.weight, leaf.beta) for leaf in leaves)
        if got != expected:
            witness = f"row {k + 1}: leaf multiset {got} != expected {expected}"
            break
        lhs = value(row_beta)
        rhs = Series.zero(vars, order)
        for j in range(7):
            if RELATION_MATRIX[k][j]:
                shifted = shift_beta_for_x(spec, RELATION_BETAS[j], 4)
                rhs = rhs + value(shifted).mul_monomial(RELATION_WEIGHTS[j])
        mm = lhs.first_mismatch(rhs, order)
        if mm is not None:
            witness = f"row {k + 1}: {mm.render(vars)}"
            break
    return IdentityReport("h-matrix", order, witness is None, witness)
