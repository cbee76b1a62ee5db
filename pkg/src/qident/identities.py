"""Registry of named, end-to-end identity verifications.

Every entry builds both sides of one identity through different computational
routes wherever possible (infinite product vs multi-sum, enumeration vs
automaton recursion) and compares them coefficientwise to a truncation order.
A handful of deliberately broken variants live under the ``neg:`` prefix;
they are excluded from bulk runs and exist to prove that the machinery
actually detects one-off exponent errors.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures.process import BrokenProcessPool
from dataclasses import dataclass
from typing import Callable

from . import partitions
from .borel import borel_apply
from .lpi import LpiSpec, compose, decompose, gap4_ideal, g_vector, language, matrices
from .multisum import MultiSumSpec, eval_sum, quinvariate_spec, verify_matrix_relation
from .partitions import (
    SET_A,
    SET_A_NO_1BAR,
    SET_A_NO_1_1BAR,
    SET_A_NO_1_1BAR_2_3BAR,
    SET_AVEE,
    enum_overpartitions,
    in_A,
    weighted_gf,
)
from .products import PochSpec, euler1, euler2, inv_qpoch, poch_finite, poch_inf, qbinom
from .report import IdentityReport
from .series import Q_VARS, QUIN_VARS, QX_VARS, QXY_VARS, Series


class UnknownIdentity(KeyError):
    pass


class OrderBudgetExceeded(ValueError):
    pass


Runner = Callable[[int], tuple[bool, "str | None"]]


@dataclass(frozen=True)
class Entry:
    id: str
    default_order: int
    max_order: int
    description: str
    runner: Runner


def _pair(build: Callable[[int], tuple[Series, Series]]) -> Runner:
    def run(order: int) -> tuple[bool, str | None]:
        lhs, rhs = build(order)
        mm = lhs.first_mismatch(rhs, order)
        return (mm is None, mm.render(lhs.vars) if mm else None)

    return run


# -- single q-variable: the mod-5 pair and the odd-moduli ladder -----------------


def _residue_product(residues: tuple[int, ...], modulus: int, order: int) -> Series:
    """1 / prod over residue classes r of (q^r; q^modulus)_inf."""
    prod = Series.one(Q_VARS, order)
    for r in residues:
        prod = prod * poch_inf(PochSpec(Q_VARS.m(q=r), modulus), Q_VARS, order)
    return prod.invert()


def _single_gap_sum(shift: int, order: int) -> Series:
    """sum_n q^{n^2 + (shift-1) n} / (q;q)_n via the generic multi-sum engine."""
    spec = MultiSumSpec(((2,),), (1,), ())
    return eval_sum(spec, (shift,), Q_VARS, order)


def _build_rr1(order: int) -> tuple[Series, Series]:
    return _residue_product((1, 4), 5, order), _single_gap_sum(1, order)


def _build_rr2(order: int) -> tuple[Series, Series]:
    return _residue_product((2, 3), 5, order), _single_gap_sum(2, order)


def _ag_spec(k: int) -> MultiSumSpec:
    rank = k - 1
    alpha = tuple(
        tuple(2 * min(a, b) for b in range(1, rank + 1)) for a in range(1, rank + 1)
    )
    return MultiSumSpec(alpha, (1,) * rank, ())


def _ag_beta(k: int, i: int) -> tuple[int, ...]:
    return tuple(r + max(0, r - i + 1) for r in range(1, k))


def _build_ag(k: int, i: int) -> Callable[[int], tuple[Series, Series]]:
    def build(order: int) -> tuple[Series, Series]:
        modulus = 2 * k + 1
        residues = tuple(r for r in range(1, modulus) if r != i and r != modulus - i)
        lhs = _residue_product(residues, modulus, order)
        rhs = eval_sum(_ag_spec(k), _ag_beta(k, i), Q_VARS, order)
        return lhs, rhs

    return build


# -- classical single sums -------------------------------------------------------


def _build_euler1(order: int) -> tuple[Series, Series]:
    z = QX_VARS.m(x=1, q=1)
    lhs = euler1(QX_VARS, order, z, 1)
    rhs = poch_inf(PochSpec(z, 1), QX_VARS, order).invert()
    return lhs, rhs


def _build_euler2(order: int) -> tuple[Series, Series]:
    z = QX_VARS.m(x=1, q=1)
    lhs = euler2(QX_VARS, order, z, 1)
    rhs = poch_inf(PochSpec(z, 1, sign=-1), QX_VARS, order)
    return lhs, rhs


def _build_qbinom(order: int) -> tuple[Series, Series]:
    a = QXY_VARS.m(y=1)
    z = QXY_VARS.m(x=1, q=1)
    lhs = qbinom(QXY_VARS, order, a, z, 1)
    rhs = poch_inf(PochSpec(QXY_VARS.m(x=1, y=1, q=1), 1), QXY_VARS, order) * poch_inf(
        PochSpec(z, 1), QXY_VARS, order
    ).invert()
    return lhs, rhs


# -- the trivariate single-sum relation ------------------------------------------


def _build_tri_single_lhs(order: int) -> Series:
    vs = QXY_VARS
    p1 = poch_finite(PochSpec(vs.m(x=1), 1, 1, sign=-1), vs, order) * poch_inf(
        PochSpec(vs.m(x=1, q=1), 1, sign=-1), vs, order
    )
    p2 = poch_finite(PochSpec(vs.m(x=1, y=1), 1, 1), vs, order) * poch_inf(
        PochSpec(vs.m(x=1, y=1, q=1), 1), vs, order
    )
    p3 = poch_inf(PochSpec(vs.m(x=2, y=1, q=2), 2), vs, order).invert()
    return p1 * p2 * p3


def _build_tri_single_rhs(order: int) -> Series:
    vs = QXY_VARS
    total = Series.zero(vs, order)
    n = 0
    while n * (n - 1) // 2 <= order:
        lead = vs.m(x=n, q=n * (n - 1) // 2)
        bracket = Series(vs, order, [(vs.unit, 1), (vs.m(x=2, y=2, q=4 * n), -1)])
        num = poch_finite(PochSpec(vs.m(x=1, y=1), 1, n), vs, order) * poch_finite(
            PochSpec(vs.m(y=1), 2, n), vs, order
        )
        den = inv_qpoch(vs, order, 1, n) * poch_finite(
            PochSpec(vs.m(x=2, y=1, q=2), 2, n), vs, order
        ).invert()
        total = total + (bracket * num * den).mul_monomial(lead)
        n += 1
    return total


def _build_tri_single(order: int) -> tuple[Series, Series]:
    return _build_tri_single_lhs(order), _build_tri_single_rhs(order)


# -- the quadruple sums and their Borel bridge ------------------------------------


def _quad_spec() -> MultiSumSpec:
    return MultiSumSpec(
        alpha=((4, 4, 4, 4), (4, 6, 4, 4), (4, 4, 4, 4), (4, 4, 4, 8)),
        bases=(2, 2, 4, 4),
        gammas=((1, 1, 0, 2), (0, 1, 1, 0)),
    )


def _quad_new_spec() -> MultiSumSpec:
    return MultiSumSpec(
        alpha=((2, 2, 4, 0), (2, 0, 0, 0), (4, 0, 0, 4), (0, 0, 4, 0)),
        bases=(2, 2, 4, 4),
        gammas=((1, 1, 0, 2), (0, 1, 1, 0)),
    )


def _build_quad_lhs(order: int) -> Series:
    vs = QXY_VARS
    return poch_inf(PochSpec(vs.m(x=1, q=1), 2, sign=-1), vs, order) * poch_inf(
        PochSpec(vs.m(y=1, q=2), 4, sign=-1), vs, order
    )


def _build_quad_rhs(order: int, perturb: int = 0) -> Series:
    vs = QXY_VARS
    spec = _quad_spec()
    beta = (1 + perturb, 3, 2, 4)
    base = eval_sum(spec, beta, vs, order)
    extra = eval_sum(
        spec, tuple(b + 8 for b in beta), vs, order
    ).mul_monomial(vs.m(x=2, y=1, q=6))
    return base + extra


def _build_quad(order: int) -> tuple[Series, Series]:
    return _build_quad_lhs(order), _build_quad_rhs(order)


def _build_quad_new_lhs(order: int) -> Series:
    vs = QXY_VARS
    prod = poch_inf(PochSpec(vs.m(x=1, q=1), 2), vs, order) * poch_inf(
        PochSpec(vs.m(y=1, q=2), 4), vs, order
    )
    return prod.invert()


def _build_quad_new_rhs(order: int) -> Series:
    vs = QXY_VARS
    spec = _quad_new_spec()
    base = eval_sum(spec, (1, 3, 2, 2), vs, order)
    extra = eval_sum(spec, (5, 3, 6, 2), vs, order).mul_monomial(vs.m(x=2, y=1, q=4))
    return base + extra


def _build_quad_new(order: int) -> tuple[Series, Series]:
    return _build_quad_new_lhs(order), _build_quad_new_rhs(order)


def _build_borel_lhs(order: int) -> tuple[Series, Series]:
    return borel_apply(_build_quad_new_lhs(order)), _build_quad_lhs(order)


def _build_borel_rhs(order: int) -> tuple[Series, Series]:
    return borel_apply(_build_quad_new_rhs(order)), _build_quad_rhs(order)


# -- automaton vs enumeration -----------------------------------------------------


def _run_lpi_eq_A(order: int) -> tuple[bool, str | None]:
    spec = gap4_ideal()
    by_size: dict[int, set] = {}
    for op in language(spec, order):
        by_size.setdefault(op.size, set()).add(op)
    for n in range(order + 1):
        generated = by_size.get(n, set())
        filtered = {op for op in enum_overpartitions(n) if in_A(op)}
        if generated != filtered:
            extra = next(iter(generated - filtered), None)
            missing = next(iter(filtered - generated), None)
            return False, (
                f"size {n}: automaton minus filter {extra!r}, filter minus automaton {missing!r}"
            )
        for op in filtered:
            if compose(spec, decompose(spec, op)) != op:
                return False, f"round-trip failed for {op!r}"
    return True, None


_SET_BETA = {
    SET_A: (1, 1, 2, 4),
    SET_A_NO_1BAR: (1, 3, 2, 4),
    SET_A_NO_1_1BAR: (3, 3, 2, 4),
    SET_A_NO_1_1BAR_2_3BAR: (3, 5, 6, 4),
}


def _build_quin_gf(setid: str) -> Callable[[int], tuple[Series, Series]]:
    def build(order: int) -> tuple[Series, Series]:
        lhs = weighted_gf(setid, order)
        rhs = eval_sum(quinvariate_spec(), _SET_BETA[setid], QUIN_VARS, order)
        return lhs, rhs

    return build


def _run_g_system(order: int) -> tuple[bool, str | None]:
    spec = gap4_ideal()
    g = g_vector(spec, order)
    shifted = [s.substitute("x", QUIN_VARS.m(x=1, q=4)) for s in g]
    weights = spec.weights(QUIN_VARS)
    for k in range(spec.size):
        rhs = Series.zero(QUIN_VARS, order)
        for j in spec.linking[k]:
            rhs = rhs + shifted[j]
        rhs = rhs.mul_monomial(weights[k])
        mm = g[k].first_mismatch(rhs, order)
        if mm is not None:
            return False, f"G_{k + 1}: {mm.render(QUIN_VARS)}"
    return True, None


def _run_f_system(order: int) -> tuple[bool, str | None]:
    spec = gap4_ideal()
    a, weights = matrices(spec)
    g = g_vector(spec, order)
    f = []
    for k in range(spec.size):
        total = Series.zero(QUIN_VARS, order)
        for j in spec.linking[k]:
            total = total + g[j]
        f.append(total)
    shifted = [s.substitute("x", QUIN_VARS.m(x=1, q=4)) for s in f]
    for k in range(spec.size):
        rhs = Series.zero(QUIN_VARS, order)
        for j in range(spec.size):
            if a[k][j]:
                rhs = rhs + shifted[j].mul_monomial(weights[j])
        mm = f[k].first_mismatch(rhs, order)
        if mm is not None:
            return False, f"F_{k + 1}: {mm.render(QUIN_VARS)}"
        at_zero = f[k].set_var_zero("x")
        if at_zero != Series.one(QUIN_VARS, order):
            return False, f"F_{k + 1}(0) != 1"
    if f[1] != f[2]:
        return False, "F_2 != F_3"
    if f[4] != f[5]:
        return False, "F_5 != F_6"
    if f[6] != g[0]:
        return False, "F_7 != G_1"
    return True, None


# -- weighted count refinements ----------------------------------------------------


def _diff_tables(a: dict, b: dict, names: tuple[str, str]) -> str | None:
    for key in sorted(set(a) | set(b)):
        if a.get(key, 0) != b.get(key, 0):
            return f"{names[0]}{key} = {a.get(key, 0)} != {names[1]}{key} = {b.get(key, 0)}"
    return None


def _run_thm15(order: int) -> tuple[bool, str | None]:
    witness = _diff_tables(
        partitions.table_A(order), partitions.table_B(order), ("A", "B")
    )
    return witness is None, witness


def _run_thmA1(order: int) -> tuple[bool, str | None]:
    t_a1 = partitions.table_A1(order)
    witness = _diff_tables(t_a1, partitions.table_B1(order), ("A1", "B1"))
    if witness:
        return False, witness
    collapsed: dict[tuple[int, int], int] = {}
    for (n, m, ell), c in partitions.table_A(order).items():
        key = (n, m + ell)
        collapsed[key] = collapsed.get(key, 0) + c
    witness = _diff_tables(t_a1, collapsed, ("A1", "sum_{m+l}A"))
    return witness is None, witness


def _run_thmA2(order: int) -> tuple[bool, str | None]:
    t_a2 = partitions.table_A2(order)
    witness = _diff_tables(t_a2, partitions.table_B2(order), ("A2", "B2"))
    if witness:
        return False, witness
    collapsed: dict[tuple[int, int], int] = {}
    for (n, m, ell), c in partitions.table_A(order).items():
        key = (n, m + 2 * ell)
        collapsed[key] = collapsed.get(key, 0) + c
    witness = _diff_tables(t_a2, collapsed, ("A2", "sum_{m+2l}A"))
    return witness is None, witness


def _build_avee_split(order: int, shift: int = 8) -> tuple[Series, Series]:
    lhs = weighted_gf(SET_AVEE, order)
    base = weighted_gf(SET_A_NO_1BAR, order)
    rhs = base + base.substitute("x", QUIN_VARS.m(x=1, q=shift)).mul_monomial(
        QUIN_VARS.m(x=2, z=1, q=6)
    )
    return lhs, rhs


def _run_h_matrix(order: int) -> tuple[bool, str | None]:
    report = verify_matrix_relation(order=order)
    return report.passed, report.witness


# -- registry ----------------------------------------------------------------------


def _entries() -> list[Entry]:
    out = [
        Entry("rr1", 50, 200, "product over parts = 1,4 mod 5 vs the gap-2 single sum", _pair(_build_rr1)),
        Entry("rr2", 50, 200, "product over parts = 2,3 mod 5 vs the shifted gap-2 single sum", _pair(_build_rr2)),
    ]
    for k in (2, 3, 4):
        for i in range(1, k + 1):
            out.append(
                Entry(
                    f"andrews-gordon-k{k}-i{i}",
                    30,
                    60,
                    f"odd-modulus {2 * k + 1} product vs the {k - 1}-fold multi-sum (i={i})",
                    _pair(_build_ag(k, i)),
                )
            )
    out += [
        Entry("euler1", 30, 80, "geometric-style single sum vs 1/(xq;q)_inf", _pair(_build_euler1)),
        Entry("euler2", 30, 80, "triangular-exponent single sum vs (-xq;q)_inf", _pair(_build_euler2)),
        Entry("qbinom", 30, 60, "binomial single sum vs (xyq;q)_inf / (xq;q)_inf", _pair(_build_qbinom)),
        Entry("tri-single", 25, 34, "trivariate single sum vs (-x;q)(xy;q)/(x^2yq^2;q^2) products", _pair(_build_tri_single)),
        Entry("quad-new", 20, 30, "signed quadruple sum vs 1/((xq;q^2)(yq^2;q^4)) products", _pair(_build_quad_new)),
        Entry("quad", 20, 30, "signed quadruple sum vs (-xq;q^2)(-yq^2;q^4) products", _pair(_build_quad)),
        Entry("borel-bridge-lhs", 20, 30, "coefficient-boost operator maps the inverse product to the signed product", _pair(_build_borel_lhs)),
        Entry("borel-bridge-rhs", 20, 30, "coefficient-boost operator maps one quadruple sum to the other", _pair(_build_borel_rhs)),
        Entry("h-matrix", 24, 34, "seven-row recurrence closure of the quinvariate multi-sum family, symbolic and numeric", _run_h_matrix),
        Entry("lpi-eq-A", 30, 36, "block-automaton language equals the gap-4 overpartition family, with round-trip", _run_lpi_eq_A),
        Entry("g-system", 20, 30, "automaton series satisfy G = W.A.G(x -> xq^4)", _run_g_system),
        Entry("f-system", 20, 30, "aggregated series satisfy F = A.W.F(x -> xq^4) with F(0) = 1", _run_f_system),
        Entry("thm51-a", 20, 28, "quinvariate enumeration of the full gap-4 family vs multi-sum", _pair(_build_quin_gf(SET_A))),
        Entry("thm51-b", 20, 28, "quinvariate enumeration without overlined 1 vs multi-sum", _pair(_build_quin_gf(SET_A_NO_1BAR))),
        Entry("thm51-c", 20, 28, "quinvariate enumeration without 1, overlined 1 vs multi-sum", _pair(_build_quin_gf(SET_A_NO_1_1BAR))),
        Entry("thm51-d", 20, 28, "quinvariate enumeration without 1, overlined 1, 2, overlined 3 vs multi-sum", _pair(_build_quin_gf(SET_A_NO_1_1BAR_2_3BAR))),
        Entry("thm15", 25, 32, "trivariate refined counts: variant family vs distinct 4-regular partitions", _run_thm15),
        Entry("thmA1", 25, 32, "double-weight counts vs distinct 4-regular partitions, plus collapse consistency", _run_thmA1),
        Entry("thmA2", 25, 32, "triple/double-weight counts vs odd parts of multiplicity <= 3, plus collapse consistency", _run_thmA2),
        Entry("avee-split", 20, 28, "variant family splits as base family plus x^2 z q^6 shifted copy", _pair(_build_avee_split)),
        # Deliberately broken variants: one exponent off by one in each.
        Entry("neg:rr1", 30, 60, "negative control: mismatched linear exponent in the gap-2 sum", _pair(lambda n: (_residue_product((1, 4), 5, n), _single_gap_sum(2, n)))),
        Entry("neg:quad", 16, 24, "negative control: first beta entry off by one in the quadruple sum", _pair(lambda n: (_build_quad_lhs(n), _build_quad_rhs(n, perturb=1)))),
        Entry("neg:avee-split", 16, 24, "negative control: shifted copy uses q^7 instead of q^8", _pair(lambda n: _build_avee_split(n, shift=7))),
    ]
    return out


REGISTRY: dict[str, Entry] = {e.id: e for e in _entries()}


def registry_ids(include_negative: bool = False) -> list[str]:
    return [i for i in REGISTRY if include_negative or not i.startswith("neg:")]


def verify(identity: str, order: int | None = None, *, max_order_override: int | None = None) -> IdentityReport:
    """Run one registry entry and time it; order defaults per entry."""
    entry = REGISTRY.get(identity)
    if entry is None:
        raise UnknownIdentity(identity)
    n = entry.default_order if order is None else order
    if n < 1:
        raise ValueError(f"order must be >= 1, got {n}")
    budget = entry.max_order if max_order_override is None else max_order_override
    if n > budget:
        raise OrderBudgetExceeded(
            f"{identity}: order {n} exceeds the resource budget {budget}"
        )
    start = time.perf_counter()
    passed, witness = entry.runner(n)
    elapsed = time.perf_counter() - start
    return IdentityReport(identity, n, passed, witness, elapsed)


def _verify_for_pool(identity: str, order: int | None) -> IdentityReport:
    return verify(identity, order)


def verify_all(
    order: int | None = None, prefix: str = "", jobs: int | None = None
) -> list[IdentityReport]:
    """Run every non-negative registry entry whose id starts with ``prefix``.

    Entries are independent; with jobs > 1 they run in worker processes, and
    reports always come back in registry order.  Set QIDENT_JOBS to override
    the default worker count (the number of available cores).
    """
    ids = [i for i in registry_ids() if i.startswith(prefix)]
    if jobs is None:
        jobs = int(os.environ.get("QIDENT_JOBS", "0")) or (os.cpu_count() or 1)
    if jobs <= 1 or len(ids) <= 1:
        return [verify(i, order) for i in ids]
    try:
        with ProcessPoolExecutor(max_workers=min(jobs, len(ids))) as pool:
            futures = [pool.submit(_verify_for_pool, i, order) for i in ids]
            return [f.result() for f in futures]
    except (OSError, PermissionError, BrokenProcessPool):
        return [verify(i, order) for i in ids]


# -- named series for coefficient export --------------------------------------------


def _gf_builder(setid: str) -> Callable[[int], Series]:
    return lambda order: weighted_gf(setid, order)


_SERIES_BUILDERS: dict[str, Callable[[int], Series]] = {
    "rr1-lhs": lambda n: _residue_product((1, 4), 5, n),
    "rr1-rhs": lambda n: _single_gap_sum(1, n),
    "rr2-lhs": lambda n: _residue_product((2, 3), 5, n),
    "rr2-rhs": lambda n: _single_gap_sum(2, n),
    "tri-single-lhs": _build_tri_single_lhs,
    "tri-single-rhs": _build_tri_single_rhs,
    "quad-lhs": _build_quad_lhs,
    "quad-rhs": _build_quad_rhs,
    "quad-new-lhs": _build_quad_new_lhs,
    "quad-new-rhs": _build_quad_new_rhs,
    "gf-A": _gf_builder(SET_A),
    "gf-A-no-1bar": _gf_builder(SET_A_NO_1BAR),
    "gf-A-no-1-1bar": _gf_builder(SET_A_NO_1_1BAR),
    "gf-A-no-1-1bar-2-3bar": _gf_builder(SET_A_NO_1_1BAR_2_3BAR),
    "gf-Avee": _gf_builder(SET_AVEE),
}


def series_names(spec: LpiSpec | None = None) -> list[str]:
    k = (spec or gap4_ideal()).size
    return (
        sorted(_SERIES_BUILDERS)
        + [f"f{j}" for j in range(1, k + 1)]
        + [f"g{j}" for j in range(1, k + 1)]
        + ["h:<beta entries, comma-separated>"]
    )


def named_series(name: str, order: int, spec: LpiSpec | None = None) -> Series:
    """Resolve a series name for coefficient export.

    Supports the fixed names above, f1..fK / g1..gK over the block automaton
    (the gap-4 ideal unless a custom one is supplied), and h:<beta list> for
    the quinvariate multi-sum at an explicit beta vector.
    """
    build = _SERIES_BUILDERS.get(name)
    if build is not None:
        return build(order)
    ideal = spec or gap4_ideal()
    if len(name) >= 2 and name[0] in "fg" and name[1:].isdigit():
        k = int(name[1:])
        if not 1 <= k <= ideal.size:
            raise UnknownIdentity(name)
        g = g_vector(ideal, order)
        if name[0] == "g":
            return g[k - 1]
        total = Series.zero(QUIN_VARS, order)
        for j in ideal.linking[k - 1]:
            total = total + g[j]
        return total
    if name.startswith("h:"):
        try:
            beta = tuple(int(p) for p in name[2:].split(","))
        except ValueError:
            raise UnknownIdentity(name) from None
        return eval_sum(quinvariate_spec(), beta, QUIN_VARS, order)
    raise UnknownIdentity(name)
