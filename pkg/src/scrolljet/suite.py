"""Verification checks run by ``scrolljet verify-identities``.

Each group returns a list of :class:`~scrolljet.report.CheckRecord`; groups are
independent and may run in separate worker processes.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import classify as cl
from . import hqf
from .chern import binom, bundle_classes
from .chowring import make_scroll_ring, push_forward
from .jetchern import (
    cn_closed,
    cn_expansion,
    coeff_table,
    curve_jet_degree,
    evaluate_on_projective_base,
    f_eval,
    fukuma_v,
    lift_to_top,
    plucker_codegree,
    special_case_cn,
)
from .report import check, info

JET_ORACLE = "jet-top-class:closed-form=expansion"
JET_CASES = "jet-top-class:rank-cases"
COEFF_VANISH = "coefficients:vanish-for-r>=m+2"
COEFF_M_PLUS_ONE = "coefficients:single-term-for-r=m+1"
COEFF_M = "coefficients:three-terms-for-r=m"
COEFF_M_MINUS_ONE = "coefficients:r=m-1-report"
BINOMIAL_SUMS = "binomial:alternating-sums-vanish"
FUKUMA = "fukuma:relation-to-top-class"
FUKUMA_PRESET = "fukuma:projective-base-preset"
HQF_ABC = "hqf:coefficients-at-n=4"
HQF_AGREE = "hqf:closed-form=recursion"
HQF_REWRITE = "hqf:rewrite-at-n=4"
PLUCKER = "plucker:conormal-plane-curve"
SCROLL_VS_JET = "scroll-defect:consistent-with-top-class"


@dataclass(frozen=True)
class Bounds:
    n_max: int = 8
    m_max: int = 6
    binomial_max: int = 30
    g_max: int = 3
    eb_max: int = 10
    search_bound: int = 10_000
    plucker_max: int = 20
    scroll_max: int = 20


def scroll_pairs(n_max: int):
    return [(m, n - m + 1) for n in range(2, n_max + 1) for m in range(1, n)]


def oracle_equivalence(b: Bounds) -> list:
    out = []
    for m, r in scroll_pairs(b.n_max):
        closed, expanded = cn_closed(m, r), cn_expansion(m, r)
        ok = closed == expanded
        vals = {"m": m, "r": r, "n": m + r - 1, "base_class": str(push_forward(closed))}
        if not ok:
            vals["expansion"] = str(push_forward(expanded))
        out.append(check(f"oracle-equivalence[m={m},r={r}]", JET_ORACLE, ok, **vals))
    return out


def special_cases(b: Bounds) -> list:
    out = []
    for m, r in scroll_pairs(b.n_max):
        if r < m:
            continue
        ok = special_case_cn(m, r) == cn_closed(m, r)
        out.append(check(f"special-case[m={m},r={r}]", JET_CASES, ok, m=m, r=r,
                         value=str(push_forward(special_case_cn(m, r)))))
    return out


def coefficient_identities(b: Bounds) -> list:
    out = []
    for m in range(0, b.m_max + 1):
        adm = [(s1, s2) for s1 in range(m + 1) for s2 in range(m + 1 - s1)]
        bad = [(r, s) for r in range(m + 2, m + 5) for s in adm if f_eval(m, r, *s)]
        out.append(check(f"coefficients-vanish[m={m}]", COEFF_VANISH, not bad, m=m, violations=bad))
        expected = {(m, 0): (-1) ** m}
        got = {s: f_eval(m, m + 1, *s) for s in adm if f_eval(m, m + 1, *s)}
        out.append(check(f"coefficients-rank-m-plus-one[m={m}]", COEFF_M_PLUS_ONE, got == expected,
                         m=m, nonzero=sorted(got.items())))
        if m >= 1:
            expected = {(m, 0): (-1) ** m * m, (m - 1, 1): (-1) ** m, (m - 1, 0): (-1) ** (m + 1)}
            got = {s: f_eval(m, m, *s) for s in adm if f_eval(m, m, *s)}
            out.append(check(f"coefficients-rank-m[m={m}]", COEFF_M, got == expected,
                             m=m, nonzero=sorted(got.items())))
    return out


def binomial_sums(b: Bounds) -> list:
    bad = []
    for m in range(2, b.binomial_max + 1):
        s1 = sum((-1) ** t * binom(m - 1, t) for t in range(m))
        s2 = sum((-1) ** t * t * binom(m, t) for t in range(m + 1))
        if s1 or s2:
            bad.append((m, s1, s2))
    return [check("alternating-binomial-sums", BINOMIAL_SUMS, not bad,
                  m_range=[2, b.binomial_max], violations=bad)]


def fukuma_checks(b: Bounds) -> list:
    out = []
    for m in range(2, b.m_max + 1):
        ring = make_scroll_ring(m, m)
        cE = bundle_classes(ring)
        v = fukuma_v(m, cE)
        em = ring.gen(f"e{m}")
        rhs = 2 * v - 2 + 2 * em
        ok = lift_to_top(rhs) == cn_closed(m, m)
        out.append(check(f"fukuma-relation[m={m}]", FUKUMA, ok, m=m, v=str(v)))
        v_val = evaluate_on_projective_base(v.component(m))
        cm_val = evaluate_on_projective_base(em)
        cn_val = evaluate_on_projective_base(cn_closed(m, m))
        # constant 1 of v plus its degree-m part
        ok = (1 + v_val, cm_val, cn_val) == (0, 1, 0)
        out.append(check(f"projective-preset[m={m}]", FUKUMA_PRESET, ok,
                         m=m, v=1 + v_val, c_m=cm_val, c_n=cn_val))
    return out


def rank_m_minus_one_report(b: Bounds) -> list:
    out = []
    for m in range(3, b.n_max // 2 + 2):
        r = m - 1
        if m + r - 1 > b.n_max:
            break
        table = coeff_table(m, r).nonzero()
        reduced = push_forward(cn_closed(m, r))
        out.append(info(f"rank-m-minus-one[m={m}]", COEFF_M_MINUS_ONE, m=m, r=r,
                        nonzero_coefficients=sorted(table.items()),
                        reduced_terms=len(reduced), base_class=str(reduced)))
    return out


def hqf_checks(b: Bounds) -> list:
    out = [check("hqf-abc[n=4]", HQF_ABC, hqf.abc(4).as_tuple() == (4, 16, -1),
                 abc=list(hqf.abc(4).as_tuple()))]
    for n in range(3, b.n_max + 1):
        count, bad = 0, []
        for g in range(0, b.g_max + 1):
            for e in range(-b.eb_max, b.eb_max + 1):
                for bb in range(-b.eb_max, b.eb_max + 1):
                    inp = hqf.HQFInput(n, g, e, bb)
                    try:
                        inp.check()
                    except hqf.InvalidHQFInput:
                        continue
                    count += 1
                    c1, c2 = hqf.cn_closed(inp), hqf.cn_recursion(inp)
                    if c1 != c2:
                        bad.append([n, g, e, bb, c1, c2])
        out.append(check(f"hqf-agreement[n={n}]", HQF_AGREE, not bad, n=n, inputs=count,
                         abc=list(hqf.abc(n).as_tuple()), mismatches=bad[:10]))
    bad = [(e, bb, g) for e in range(-b.eb_max, b.eb_max + 1) for bb in range(-b.eb_max, b.eb_max + 1)
           for g in range(0, b.g_max + 1) if hqf.closed_form_value(4, e, bb, g) != hqf.rewrite_n4(e, bb, g)]
    out.append(check("hqf-rewrite[n=4]", HQF_REWRITE, not bad, violations=bad[:10]))
    return out


def obstruction(b: Bounds) -> list:
    rep = hqf.defect_obstruction_search(b.search_bound, b.search_bound)
    return [check("obstruction-search", cl.NO_DEFECT_N_MINUS_3, rep.empty, bound=b.search_bound,
                  witnesses=rep.witnesses, explanation=rep.explanation)]


def plucker_checks(b: Bounds) -> list:
    p3 = plucker_codegree(3)
    out = [check("plucker[d=3]", PLUCKER, p3.as_dict() == {"total": 12, "dual_curve_part": 3, "flex_part": 9},
                 **p3.as_dict())]
    bad = []
    for d in range(2, b.plucker_max + 1):
        genus = (d - 1) * (d - 2) // 2
        total = plucker_codegree(d).total
        via_curve = curve_jet_degree(genus, d * (d - 1))
        via_twist = (d - 1) * d + 2 * d * (d - 2)
        if not total == via_curve == via_twist:
            bad.append((d, total, via_curve, via_twist))
    out.append(check("plucker-consistency", PLUCKER, not bad, d_range=[2, b.plucker_max], violations=bad))
    return out


def classification_checks(b: Bounds) -> list:
    out = []
    bad = []
    for n in range(1, 13):
        for k in range(0, n + 1):
            for pic in (False, True):
                c = cl.classify_by_defect(n, k, pic)
                expected = _table_lookup(n, k, pic)
                got = (tuple(c.labels()), c.citations[0] if c.citations else None)
                if got != expected:
                    bad.append((n, k, pic, got, expected))
    out.append(check("classification-summary-table", cl.MAX_DEFECT, not bad, violations=bad[:10],
                     columns=sorted(cl.SUMMARY_TABLE)))
    bad = []
    for m in range(1, b.scroll_max + 1):
        for r in range(2, b.scroll_max + 1):
            gap = m + r - 1 - 2 * m
            if gap >= 0 and cl.scroll_defect(m, r).defect != gap:
                bad.append((m, r))
    out.append(check("scroll-defect-sweep", cl.SCROLL_DEFECT_EQUALITY, not bad,
                     bound=b.scroll_max, violations=bad))
    out.extend(scroll_vs_jet(min(b.m_max, 4)))
    return out


def _table_lookup(n, k, pic):
    if k == 0:
        return (("Undetermined",), None)
    column = {n: "n", n - 1: "n-1", n - 2: "n-2", n - 3: "n-3", n - 4: "n-4"}.get(k)
    if column is None:
        return (("Undetermined",), None)
    labels, cite, _ = cl.SUMMARY_TABLE[column]
    applies = {"n": True, "n-1": True, "n-2": n >= 3, "n-3": n >= 4, "n-4": pic}[column]
    return (labels, cite) if applies else (("Undetermined",), None)


def scroll_vs_jet(m_max: int) -> list:
    out = []
    for m in range(1, m_max + 1):
        for r in range(max(2, m), 2 * m + 3):
            preset = cl.BasePreset(1)
            c = cl.scroll_defect(m, r, preset)
            cn = cn_closed(m, r)
            vanishes = evaluate_on_projective_base(cn) == 0
            positive = c.outcome is cl.Outcome.POSITIVE_AT_LEAST_ONE
            ok = positive == vanishes
            vals = {"m": m, "r": r, "outcome": c.outcome.value, "c_n_on_preset": evaluate_on_projective_base(cn)}
            plain = cl.scroll_defect(m, r)
            if plain.outcome is cl.Outcome.ZERO:
                witness = evaluate_on_projective_base(cn, twist=2)
                vals["c_n_on_O2_witness"] = witness
                ok = ok and witness != 0
            out.append(check(f"scroll-vs-jet[m={m},r={r}]", SCROLL_VS_JET, ok, **vals))
    return out


GROUPS = {
    "oracle": oracle_equivalence,
    "special": special_cases,
    "coefficients": coefficient_identities,
    "binomial": binomial_sums,
    "fukuma": fukuma_checks,
    "rank-m-minus-one": rank_m_minus_one_report,
    "hqf": hqf_checks,
    "obstruction": obstruction,
    "plucker": plucker_checks,
    "classification": classification_checks,
}


def _run_group(args):
    name, bounds = args
    return GROUPS[name](bounds)


def run_all(bounds: Bounds, jobs: int = 1) -> list:
    tasks = [(name, bounds) for name in GROUPS]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_group, tasks))
    else:
        chunks = [_run_group(t) for t in tasks]
    return [rec for chunk in chunks for rec in chunk]
