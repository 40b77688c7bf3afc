"""Registry of verification targets run by ``arithchern verify``.

Each target runs a family of exact checks and returns ``(ok, detail)``.
Target ids are stable; the statement describes what is checked.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from ._rational import fmt_rational
from .chern import (
    FormMatrix,
    centralizer_check,
    chern_lift,
    globality_check,
    ideal_check,
    load_form,
    make_ring,
    split_form,
    verify_bq_diagram,
    verify_hq_diagram,
)
from .curvature import Q_form, curvature11, curvature2, diagonal_mod3_check, graded_piece
from .matseries import SeriesMatrix
from .oneprime import hensel_oracle, lhs_engine, n1_identity_check, rhs_sunny, vanishes
from .reduced import (
    LOWER,
    UPPER,
    congruence_extract,
    corner_consistency,
    corner_three_consistency,
    corner_two_consistency,
    expected_g2,
    expected_g3,
    g_poly,
    n2_symplectic_commutation,
    so_composition_check,
    so_torus_check,
    so_unipotent_check,
)
from .series import Series
from .unitary import coefficient_contradiction, relation_check, uc_commutator_check, uc_lift_p

__all__ = ["TARGETS", "VerifyTarget", "run_target"]


@dataclass(frozen=True)
class VerifyTarget:
    id: str
    statement: str
    expected: str
    params: dict = field(default_factory=dict)
    run: Callable = None


class Failure(Exception):
    pass


def _need(ok, message: str) -> None:
    if not ok:
        raise Failure(message)


def _split_forms(n: int) -> list[FormMatrix]:
    if n == 1:
        return [split_form("split-sym-odd", 1)]
    if n % 2:
        return [split_form("split-sym-odd", n)]
    return [split_form("split-sym-even", n), split_form("symplectic", n)]


def _form_name(q: FormMatrix) -> str:
    return f"n={q.n} sign={q.sign:+d}"


# -- targets ----------------------------------------------------------------


def _g2(primes):
    ps = sorted(set(primes))
    notes = []
    for p, p2 in itertools.product(ps, repeat=2):
        for sign in (UPPER, LOWER):
            got = congruence_extract(g_poly([p, p2], sign))
            want = [0, 0, expected_g2(p, p2, sign)]
            _need(got == want, f"g_{p}{p2} sign {sign:+d}: got {[fmt_rational(c) for c in got]}")
    if len(ps) > 1:
        p, p2 = ps[0], ps[1]
        c = congruence_extract(g_poly([p, p2]))[2]
        notes.append(f"g_{p},{p2}(v,1) = {fmt_rational(c)}*v^2 mod v^3")
    return f"{len(ps) ** 2 * 2} congruences; " + "; ".join(notes)


def _g3(primes):
    ps = sorted(set(primes))
    count = 0
    for t in itertools.product(ps, repeat=3):
        got = [2 * c for c in congruence_extract(g_poly(list(t)))]
        want = [0, 0, expected_g3(*t)]
        _need(got == want, f"2 g_{t}: got {[fmt_rational(c) for c in got]}")
        count += 1
    t = tuple(ps[:3]) if len(ps) >= 3 else None
    extra = ""
    if t:
        c = 2 * congruence_extract(g_poly(list(t)))[2]
        extra = f"; 2 g_{t[0]},{t[1]},{t[2]}(v,1) = {fmt_rational(c)}*v^2 mod v^3"
    return f"{count} triples{extra}"


def _lifts(primes):
    count = 0
    for n in (1, 2, 3, 4):
        for q in _split_forms(n):
            for p in primes:
                order = 3 if n <= 3 else 2
                lift = chern_lift(q, p, order)
                name = f"{_form_name(q)} p={p}"
                _need(all(not e.constant_term() for e in lift.Phi0), f"{name}: Phi_p(1) != 1")
                lin = lift.Phi0.truncate(1)
                T = SeriesMatrix.generic(q.ring, n, 1)
                diag = SeriesMatrix(
                    [[T[i, j].scale(p) if i == j else T[i, j].zero() for j in range(n)] for i in range(n)]
                )
                _need(lin == diag, f"{name}: linear part is not diag(p T_ii)")
                for check in (verify_hq_diagram, verify_bq_diagram):
                    res = check(q, lift)
                    _need(res, f"{name}: {check.__name__}: {res.witness}")
                res = globality_check(lift)
                _need(res, f"{name}: {res.witness}")
                _need(ideal_check(q, lift), f"{name}: ideal not preserved")
                if n % 2 == 0:
                    _need(diagonal_mod3_check(q, lift), f"{name}: mod (T)^3 diagonal formula")
                count += 1
    return f"{count} lifts: fix 1, linear part diag(p T_ii), both diagrams, globality, ideal"


def _nonglobal(primes):
    q = load_form({"n": 2, "sign": -1, "entries": [["0", "2"], ["-2", "0"]]})
    p = 3
    res = globality_check(chern_lift(q, p, 2))
    _need(not res, "lift for a non-root-of-unity form reported global")
    return f"q=[[0,2],[-2,0]], p={p}: {res.witness}"


def _centralizer(primes):
    for n in (2, 4):
        q = split_form("identity", n)
        for p in primes:
            res = centralizer_check(chern_lift(q, p, 3 if n == 2 else 2))
            _need(res, f"n={n} p={p}: {res.witness}")
    for p in primes:
        res = relation_check(uc_lift_p(p, 6))
        _need(res, f"unitary relation at p={p}: {res.witness}")
    return "centralizer of J preserved for n=2,4; relation 2a+a^2+b^2 preserved"


def _corner(primes):
    p, p2 = primes[0], primes[1]
    for kind in ("split-sym-even", "symplectic"):
        q = split_form(kind, 4)
        res = corner_consistency(q, p, 4)
        _need(res, f"corner {kind}: {res.witness}")
    res = corner_two_consistency(p, p2, UPPER)
    _need(res, f"corner commutator: {res.witness}")
    deg = res.data["leading_degree"]
    c = congruence_extract(g_poly([p, p2]))[2]
    _need(c != 0, "g has vanishing v^2 coefficient")
    return f"corner reduction exact at n=4, order 4; [F_{p},F_{p2}] = g_{p}{p2} != 0 from degree {deg}"


def _deg2(primes):
    pairs = [(a, b) for a, b in itertools.combinations(sorted(primes), 2)]
    for n in (2, 4):
        for q in _split_forms(n):
            for p, p2 in pairs:
                rep = curvature2(q, p, p2, 2)
                _need(graded_piece(rep, 2).is_zero(), f"{_form_name(q)} ({p},{p2}): {rep.witness()}")
    return f"degree <= 2 part zero for n=2,4, both signs, pairs {pairs}"


def _sympl2(primes):
    q = split_form("symplectic", 2)
    p, p2 = primes[0], primes[1]
    for order in (5, 7):
        rep = curvature2(q, p, p2, order)
        _need(rep.is_zero(), f"order {order}: {rep.witness()}")
    res = n2_symplectic_commutation(p, p2, 4)
    _need(res, res.witness)
    return f"n=2 alternating: zero through order 7 for ({p},{p2}); closed form agrees and commutes"


def _n1(primes):
    q = split_form("split-sym-odd", 1)
    for p, p2 in itertools.combinations(sorted(primes), 2):
        for order in (5, 7):
            rep = curvature2(q, p, p2, order)
            _need(rep.is_zero(), f"({p},{p2}) order {order}: {rep.witness()}")
    return "n=1: zero through order 7"


def _so(primes):
    p, p2 = primes[0], primes[1]
    res = so_torus_check(p, p2, 6)
    _need(res, f"torus: {res.witness}")
    for s in primes:
        res = so_unipotent_check(s)
        _need(res, f"unipotent p={s}: {res.witness}")
    res = so_composition_check(p, p2)
    _need(res, f"composition: {res.witness}")
    return f"torus commutes; unipotent corner f_p(v,uw-v); composites differ at degree {res.data['degree']}"


def _three(primes):
    p, p2, p3 = primes[0], primes[1], primes[2]
    res = corner_three_consistency(p, p2, p3)
    _need(res, res.witness)
    c = 2 * congruence_extract(g_poly([p, p2, p3]))[2]
    _need(c != 0, "triple congruence vanished")
    return f"p'p'' phi_{p}{p2}{p3}(B_ij) = g_{p3}{p2}{p}(B_ij,B_ji); 2g(v,1) = {fmt_rational(c)}*v^2 mod v^3"


def _mixed(primes):
    p, p2 = primes[0], primes[1]
    for kind in ("split-sym-even", "symplectic"):
        q = split_form(kind, 2)
        for a, b in ((p, p2), (p, p)):
            rep = curvature11(q, a, b, 2)
            factor = 1 if a != b else a
            m = rep.entries
            ring = q.ring
            n, r = 2, 1
            for i in range(r):
                Q = Q_form(n, q.sign, i, ring, 2)
                tt = Series.var(ring, 4, 2, 0) * Series.var(ring, 4, 2, 3)
                want = (Q - tt).scale(factor * ring.coerce(1) / 2)
                _need(m[i, i] == want and m[i + r, i + r] == want, f"{kind} ({a},{b}) diagonal {m[i, i].render()}")
            _need(all(not m[i, j] for i in range(n) for j in range(n) if i != j), f"{kind} off-diagonal")
            _need(graded_piece(rep, 1).is_zero(), f"{kind} ({a},{b}): degree 1 part nonzero")
            _need(not graded_piece(rep, 2).is_zero(), f"{kind} ({a},{b}): degree 2 part zero")
    return f"diagonal = c/2 (Q_i - T_ii T_i'i') with c=1 ({p},{p2}) and c={p} ({p},{p}); degree 1 zero, degree 2 nonzero"


def _unitary(primes):
    notes = []
    pairs = [(primes[0], primes[1]), (primes[0], primes[0]), (primes[1], primes[1])]
    for p, p2 in pairs:
        lhs, rhs = coefficient_contradiction(p, p2)
        _need((lhs, rhs) == (2 * p * p2, 4 * p * p2), f"({p},{p2}): {lhs} vs {rhs}")
        notes.append(f"({p},{p2}): {lhs} vs {rhs}")
        res = uc_commutator_check(p, p2, 3)
        _need(res, f"({p},{p2}): {res.witness}")
    return "alpha-coefficients " + ", ".join(notes) + f"; commutator witness {res.witness}"


def _sunny(primes):
    ring = make_ring()
    cases = [
        (FormMatrix(1, 1, [[2]], ring), 3, 5),
        (FormMatrix(1, 1, [[3]], ring), 5, 4),
        (load_form({"n": 2, "sign": -1, "entries": [["0", "2"], ["-2", "0"]]}), 3, 5),
    ]
    for q, p, k in cases:
        rhs = rhs_sunny(q, p, k)
        lhs = lhs_engine(q, p, 2, k).value
        _need(rhs.congruent(lhs, k - 1), f"q={q.to_json()['entries']} p={p}: {rhs} vs {lhs}")
        if q.n == 1:
            oracle = hensel_oracle(q.entries[0][0], p, k)
            _need(rhs[0, 0].congruent(oracle, k - 1), f"Hensel oracle disagrees at q={q.entries[0][0]}")
    value = rhs_sunny(cases[0][0], 3, 5).residues()[0][0]
    _need(value == -2, f"q=2, p=3 gives {value}")
    res = n1_identity_check(2, 3, 3, 4)
    _need(res, res.witness)
    for n in (1, 2, 3, 4):
        for q in _split_forms(n):
            for p in primes:
                _need(vanishes(q, p, 4), f"{_form_name(q)} p={p}: nonzero value at 1")
    for x in (2, 3, "1/2"):
        for p in (3, 5):
            if x == 3 and p == 3:
                continue
            _need(not vanishes(FormMatrix(1, 1, [[x]], ring), p, 4), f"q={x} p={p} vanished")
    return "closed form = engine mod p^(k-1); q=2, p=3 gives -2; split forms give 0; n=1 identity holds"


TARGETS = [
    VerifyTarget("lemma-4.2", "2 g_pp'p''(v,1) has the predicted v^2 coefficient", "congruence", {}, _g3),
    VerifyTarget("thm-3.1.1", "Chern lifts of split forms fix 1, are global, and satisfy both diagrams", "agreement", {"order": 3}, _lifts),
    VerifyTarget("thm-3.1.2", "a form with a non-root-of-unity entry gives a lift that is not global", "nonzero", {}, _nonglobal),
    VerifyTarget("thm-3.1.3", "lifts for q = 1 preserve the centralizer of J and the unitary relation", "agreement", {}, _centralizer),
    VerifyTarget("thm-3.2.1", "curvature is nonzero for n >= 4 (corner reduction)", "nonzero", {"n": 4, "order": 4}, _corner),
    VerifyTarget("thm-3.2.2", "curvature vanishes mod (T)^3 for even n", "zero", {"order": 2}, _deg2),
    VerifyTarget("thm-3.2.3", "curvature vanishes for n = 2 alternating", "zero", {"order": 7}, _sympl2),
    VerifyTarget("thm-3.2.4", "curvature vanishes for n = 1", "zero", {"order": 7}, _n1),
    VerifyTarget("thm-3.4", "special orthogonal curvature: zero for n = 2, nonzero for n >= 6", "nonzero", {}, _so),
    VerifyTarget("thm-3.5", "3-curvature is nonzero for n >= 4", "nonzero", {}, _three),
    VerifyTarget("thm-3.6", "(1,1)-curvature: degree 1 part zero, degree 2 part nonzero", "congruence", {"n": 2, "order": 2}, _mixed),
    VerifyTarget("thm-3.7", "unitary (1,1)-curvature is nonzero", "nonzero", {}, _unitary),
    VerifyTarget("thm-4.8", "g_pp'(v,1) has the predicted v^2 coefficient", "congruence", {}, _g2),
    VerifyTarget("thm-5.1", "one-prime (1,1)-curvature at 1: closed form, n = 1 identity, vanishing", "agreement", {}, _sunny),
]

_BY_ID = {t.id: t for t in TARGETS}


def get_target(tid: str) -> VerifyTarget:
    try:
        return _BY_ID[tid]
    except KeyError:
        raise KeyError(f"unknown target {tid!r}; known: {', '.join(sorted(_BY_ID))}") from None


def run_target(tid: str, primes: list[int]) -> tuple[bool, str]:
    target = get_target(tid)
    try:
        return True, target.run(primes)
    except Failure as exc:
        return False, str(exc)
