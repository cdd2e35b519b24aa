"""Mechanical verification harness.

Each check computes every quantity in one of the library's verified
inequalities or identities on a concrete instance, decides the verdict, and
wraps the exact numbers in a ``CheckReport``.  Nothing is ever asserted
abstractly: a falsified verdict always carries a reproducible witness (ring,
generators, forms, seed).

Hypothesis tests on associated primes are exact: "F avoids every associated
prime of dimension >= d" is equivalent to F being a non-zero-divisor modulo
the dimension filtration at level d, which is one colon comparison.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

from .degrees import (
    ArithProfile,
    DecompositionCertificate,
    arith_deg,
    arith_deg_certificate,
    arith_profile,
    filtration,
    verify_certificate,
)
from .groebner import Ideal, colon, ideal_equal, intersect
from .hilbert import (
    NumPoly,
    delta,
    delta_function,
    hilbert_function,
    hilbert_polynomial,
    ring_hilbert_polynomial,
)
from .monomial import lcm_betti
from .resolution import betti_table, depth, regularity
from .ring import GREVLEX, Poly, PolyRing, QQ, RingError


HOLDS = "holds"
EQUALITY = "equality-holds"
STRICT = "strict-inequality"
HYPOTHESIS_VIOLATED = "hypothesis-violated"
FALSIFIED = "falsified"


@dataclass
class CheckReport:
    check: str
    instance: str
    values: dict
    verdict: str
    witness: Optional[dict] = None
    seed: Optional[int] = None
    notes: tuple = ()

    def ok(self) -> bool:
        return self.verdict in (HOLDS, EQUALITY, STRICT)

    def to_jsonable(self) -> dict:
        return {
            "check": self.check,
            "instance": self.instance,
            "values": _jsonable(self.values),
            "verdict": self.verdict,
            "witness": _jsonable(self.witness) if self.witness else None,
            "seed": self.seed,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_jsonable(), sort_keys=True)

    def render(self) -> str:
        lines = [f"[{self.verdict}] {self.check} on {self.instance}"]
        for k in sorted(self.values):
            lines.append(f"    {k} = {_render_value(self.values[k])}")
        for note in self.notes:
            lines.append(f"    note: {note}")
        if self.witness:
            lines.append(f"    witness: {json.dumps(_jsonable(self.witness), sort_keys=True)}")
        return "\n".join(lines)


def _render_value(v):
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (Poly, NumPoly, Ideal)):
        return str(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    return obj


def _instance_label(I: Ideal, extra: str = "") -> str:
    ring = I.ring
    gens = ", ".join(str(g) for g in I.gens)
    label = f"({gens}) over {ring.field.name}[{','.join(ring.variables)}]"
    if ring.field.characteristic:
        label += " [characteristic-p evidence]"
    return label + (f" {extra}" if extra else "")


def _witness(I: Ideal, **extra) -> dict:
    out = {
        "field": I.ring.field.name,
        "variables": list(I.ring.variables),
        "order": str(I.ring.order),
        "generators": [str(g) for g in I.gens],
    }
    out.update({k: _jsonable(v) for k, v in extra.items()})
    return out


# ---------------------------------------------------------------------------
# associated-prime avoidance, exactly


def form_avoids_assprimes_geq(I: Ideal, F: Poly, d: int) -> bool:
    """F avoids every associated prime of I with hdim >= d: F is a
    non-zero-divisor modulo the filtration at level d."""
    J = filtration(I, max(d, -1))
    if J.is_unit():
        return True
    return ideal_equal(colon(J, F), J)


# ---------------------------------------------------------------------------
# hypersurface section check


def check_hypersurface(I: Ideal, F: Poly, r: int) -> CheckReport:
    """All the hypersurface-section quantities at level r for a form F.

    Verifies the inequality
        arith-deg_{r-1}(I,F) - arith-deg_{r-1}(I_{>=r+1},F) >= tau * arith-deg_r(I),
    its equality criterion (F avoids the (r-1)-dimensional associated primes),
    the weaker corollary bound without the filtration term together with its
    two-part criterion, the full colon-module polynomial identity (r >= 1),
    and the filtration exchange (I_{>=u},F)_{>=r} = (I,F)_{>=r} for u <= r+1.
    """
    name = "hypersurface-section"
    label = _instance_label(I, f"F={F}, r={r}")
    tau = F.homogeneous_degree()
    if tau is None or tau < 1:
        raise RingError("the section form must be homogeneous of degree >= 1")
    if r < 0:
        raise RingError("the section level r must be >= 0")
    values: dict = {"tau": tau, "r": r}

    if not form_avoids_assprimes_geq(I, F, r):
        return CheckReport(
            check=name,
            instance=label,
            values=values,
            verdict=HYPOTHESIS_VIOLATED,
            notes=("F lies in an associated prime of dimension >= r",),
        )

    IF = I.with_forms(F, provenance="section")
    upper = filtration(I, r + 1)
    upper_F = upper.with_forms(F, provenance="filtration section")

    A = arith_deg(IF, r - 1)
    B = arith_deg(upper_F, r - 1)
    C = arith_deg(I, r)
    values.update({
        "lhs_section": A,
        "lhs_filtration_section": B,
        "arith_deg_r": C,
        "bound": tau * C,
    })

    crit_low = form_avoids_assprimes_geq(I, F, r - 1)
    values["avoids_dim_r_minus_1"] = crit_low

    problems = []
    if A - B < tau * C:
        problems.append("main inequality fails")
    if (A - B == tau * C) != crit_low:
        problems.append("equality criterion disagrees with the computed gap")
    cor_equal = A == tau * C
    cor_crit = crit_low and B == 0
    values["corollary_equality"] = cor_equal
    values["corollary_criterion"] = cor_crit
    if A < tau * C:
        problems.append("corollary inequality fails")
    if cor_equal != cor_crit:
        problems.append("corollary criterion disagrees")

    if r >= 1:
        identity_ok = _colon_module_identity(I, F, r, tau, A, C, upper_F)
        values["colon_module_identity"] = identity_ok
        if not identity_ok:
            problems.append("colon-module polynomial identity fails")

    exchange_ok = True
    for u in range(-1, r + 2):
        lhs = filtration(filtration(I, u).with_forms(F), r)
        rhs = filtration(IF, r)
        if not ideal_equal(lhs, rhs):
            exchange_ok = False
            problems.append(f"filtration exchange fails at u={u}")
            break
    values["filtration_exchange"] = exchange_ok

    if problems:
        return CheckReport(
            check=name,
            instance=label,
            values=values,
            verdict=FALSIFIED,
            witness=_witness(I, form=F, r=r, problems=problems),
        )
    verdict = EQUALITY if A - B == tau * C else STRICT
    return CheckReport(check=name, instance=label, values=values, verdict=verdict)


def _colon_module_identity(I, F, r, tau, A, C, upper_F) -> bool:
    """arith-deg_{r-1}(I,F) - D^{r-1}P(S/(I_{>=r+1},F)) + D^{r-1}P(S/(I,F)_{>=r})
    equals tau*arith-deg_r(I) + D^{r-1}P((I:F)/I, l - tau), as polynomials."""
    IF = I.with_forms(F)
    lhs = (
        NumPoly.constant(A)
        - delta(hilbert_polynomial(upper_F).poly, r - 1)
        + delta(hilbert_polynomial(filtration(IF, r)).poly, r - 1)
    )
    torsion = hilbert_polynomial(I).poly - hilbert_polynomial(colon(I, F)).poly
    rhs = NumPoly.constant(tau * C) + delta(torsion, r - 1).shift_arg(tau)
    return lhs == rhs


# ---------------------------------------------------------------------------
# generic hyperplane sections


class RetryBudgetExhausted(RuntimeError):
    pass


def _draw_linear_form(ring: PolyRing, rng: random.Random, bound: int) -> Poly:
    while True:
        coeffs = [rng.randint(-bound, bound) for _ in range(ring.nvars)]
        if any(coeffs):
            break
    acc = ring.zero()
    for i, c in enumerate(coeffs):
        if c:
            acc = acc + ring.variable(i) * c
    return acc


def check_generic_section(
    I: Ideal,
    r: int,
    seed: int = 11,
    trials: int = 3,
    coeff_bound: int = 100,
    max_redraws: int = 32,
) -> CheckReport:
    """Seeded random hyperplanes h: arith-deg_r(I) should drop to level r-1
    of (I, h) for every trial.  Drawn forms must be non-zero-divisors modulo
    the saturation (the exact stand-in for genericity over the rationals)."""
    name = "generic-hyperplane-section"
    label = _instance_label(I, f"r={r}")
    if I.ring.field.characteristic != 0:
        raise RingError("generic sections are checked over the rationals only")
    if r < 1:
        return CheckReport(
            check=name,
            instance=label,
            values={"r": r},
            verdict=HYPOTHESIS_VIOLATED,
            seed=seed,
            notes=("the section level must satisfy r >= 1",),
        )
    rng = random.Random(seed)
    lhs = arith_deg(I, r)
    sat = filtration(I, 0)
    per_trial = []
    all_equal = True
    for _ in range(trials):
        h = None
        for _ in range(max_redraws):
            candidate = _draw_linear_form(I.ring, rng, coeff_bound)
            if sat.is_unit() or ideal_equal(colon(sat, candidate), sat):
                h = candidate
                break
        if h is None:
            raise RetryBudgetExhausted(
                "no drawn hyperplane avoided the associated primes; "
                "raise the coefficient bound"
            )
        rhs = arith_deg(I.with_forms(h, provenance="generic section"), r - 1)
        per_trial.append({"form": str(h), "value": rhs})
        if rhs != lhs:
            all_equal = False
    values = {"arith_deg_r": lhs, "trials": per_trial, "r": r}
    if all_equal:
        return CheckReport(
            check=name, instance=label, values=values, verdict=HOLDS, seed=seed
        )
    return CheckReport(
        check=name,
        instance=label,
        values=values,
        verdict=FALSIFIED,
        seed=seed,
        witness=_witness(I, r=r, trials=per_trial, seed=seed),
    )


def check_generic_section_cross_seed(
    I: Ideal,
    r: int,
    seeds: Sequence[int] = (11, 17),
    trials: int = 3,
    coeff_bound: int = 100,
) -> CheckReport:
    """Run two seeds; on disagreement double the coefficient bound once."""
    first = check_generic_section(I, r, seeds[0], trials, coeff_bound)
    second = check_generic_section(I, r, seeds[1], trials, coeff_bound)
    if first.verdict == second.verdict:
        return first
    first = check_generic_section(I, r, seeds[0], trials, 2 * coeff_bound)
    second = check_generic_section(I, r, seeds[1], trials, 2 * coeff_bound)
    if first.verdict == second.verdict:
        first.notes = first.notes + ("coefficient bound doubled after seed disagreement",)
        return first
    raise RetryBudgetExhausted("seed disagreement persists after doubling the bound")


# ---------------------------------------------------------------------------
# regularity bounds


def check_regularity_bounds(I: Ideal, r_max: Optional[int] = None, span: int = 3) -> CheckReport:
    """Bounds against the regularity invariant m = m(I) and t = depth(S/I):

    * arith-deg_r(I) <= D^r P(S/I, l) for l in [m-1, m-1+span];
    * the binomial chain arith-deg_r <= D^r P(S/I, m-1) <= C(m+n-r-1, n-r) <= m^(n-r);
    * arith-deg_r(I) <= D^r H(S/I, l) from l = m+r-t-1 (r-t even) or m+r-t (odd);
    * D^r P(I, l) >= 0 for l >= m-1, with P(I) = P(S) - P(S/I).
    """
    name = "regularity-bounds"
    if I.is_unit() or I.is_zero():
        raise RingError("regularity bounds need a proper nonzero ideal")
    n = I.ring.n
    if r_max is None:
        r_max = n
    r_max = min(r_max, n)
    m = regularity(I)
    t = depth(I)
    label = _instance_label(I, f"m={m}, depth={t}")
    P = hilbert_polynomial(I).poly
    P_ideal = ring_hilbert_polynomial(I.ring.nvars) - P

    problems = []
    rows = []
    for r in range(0, r_max + 1):
        a = arith_deg(I, r)
        dP = delta(P, r)
        for ell in range(m - 1, m + span):
            if a > dP(ell):
                problems.append(f"degree bound fails at r={r}, l={ell}")
        binom = comb(m + n - r - 1, n - r)
        power = m ** (n - r)
        val = dP(m - 1)
        if not (a <= val <= binom <= power):
            problems.append(f"binomial chain fails at r={r}")
        start = m + r - t - 1 if (r - t) % 2 == 0 else m + r - t
        for ell in range(start, start + span + 1):
            if a > delta_function(lambda x: hilbert_function(I, x), r, ell):
                problems.append(f"function bound fails at r={r}, l={ell}")
        dPI = delta(P_ideal, r)
        for ell in range(m - 1, m + span):
            if dPI(ell) < 0:
                problems.append(f"ideal difference negative at r={r}, l={ell}")
        rows.append({
            "r": r,
            "arith_deg": a,
            "delta_P_at_m_minus_1": str(val),
            "binomial": binom,
            "power": power,
        })
    values = {"m": m, "depth": t, "rows": rows}
    if problems:
        return CheckReport(
            check=name,
            instance=label,
            values=values,
            verdict=FALSIFIED,
            witness=_witness(I, problems=problems),
        )
    return CheckReport(check=name, instance=label, values=values, verdict=HOLDS)


# ---------------------------------------------------------------------------
# iterated sections


def check_bezout(
    I: Ideal,
    forms: Sequence[Poly],
    r: int,
    t: Optional[int] = None,
) -> CheckReport:
    """Iterated hypersurface sections against the product of the form degrees.

    Checks the product inequality
        arith-deg_{r-s}(I, F_1..F_s) >= prod(deg F_i) * arith-deg_r(I),
    the two-part equality criterion, the optional equality criterion relative
    to a filtration level t, and the filtration exchange identities.
    """
    name = "iterated-section-product"
    s = len(forms)
    label = _instance_label(I, f"forms=({', '.join(str(f) for f in forms)}), r={r}")
    if s < 1:
        raise RingError("at least one section form is required")
    if s > r + 1:
        raise RingError("the number of forms may not exceed r + 1")
    degrees = []
    for f in forms:
        d = f.homogeneous_degree()
        if d is None or d < 1:
            raise RingError("section forms must be homogeneous of degree >= 1")
        degrees.append(d)

    chain = [I]
    for i, f in enumerate(forms, start=1):
        if not form_avoids_assprimes_geq(chain[-1], f, r - i + 1):
            return CheckReport(
                check=name,
                instance=label,
                values={"failing_form": str(f), "level": r - i + 1},
                verdict=HYPOTHESIS_VIOLATED,
                notes=(
                    f"form {i} lies in an associated prime of dimension >= {r - i + 1}",
                ),
            )
        chain.append(chain[-1].with_forms(f, provenance=f"section {i}"))

    product = 1
    for d in degrees:
        product *= d
    base = arith_deg(I, r)
    lhs = arith_deg(chain[-1], r - s)
    values: dict = {
        "lhs": lhs,
        "degree_product": product,
        "arith_deg_r": base,
        "bound": product * base,
    }
    problems = []
    if lhs < product * base:
        problems.append("product inequality fails")

    crit_parts = []
    for i in range(1, s + 1):
        J = chain[i - 1]
        Fi = forms[i - 1]
        upper = filtration(J, r - i + 2).with_forms(Fi)
        no_low_primes = arith_deg(upper, r - i) == 0
        avoids_eq = form_avoids_assprimes_geq(J, Fi, r - i)
        crit_parts.append({"i": i, "filtration_section_clean": no_low_primes,
                           "avoids_dim_exact": avoids_eq})
    criterion = all(p["filtration_section_clean"] and p["avoids_dim_exact"]
                    for p in crit_parts)
    values["equality"] = lhs == product * base
    values["criterion_parts"] = crit_parts
    values["criterion"] = criterion
    if (lhs == product * base) != criterion:
        problems.append("equality criterion disagrees")

    # consequence check: a clean final section forces clean intermediate ones
    if arith_deg(chain[-1], r - s) == 0:
        for p in crit_parts:
            if not p["filtration_section_clean"]:
                problems.append("intermediate section keeps a low prime "
                                "despite a clean final section")

    if t is not None:
        if not -1 <= t <= r + 1:
            raise RingError("the filtration level t must lie in [-1, r+1]")
        It = filtration(I, t)
        t_chain = [It]
        t_hyp = True
        for i, f in enumerate(forms, start=1):
            if not form_avoids_assprimes_geq(t_chain[-1], f, r - i + 1):
                t_hyp = False
                break
            t_chain.append(t_chain[-1].with_forms(f))
        clean_tail = t_hyp and arith_deg(t_chain[-1], r - s) == 0
        values["t_hypotheses"] = t_hyp and clean_tail
        if t_hyp and clean_tail:
            simple_criterion = all(p["avoids_dim_exact"] for p in crit_parts)
            values["t_criterion"] = simple_criterion
            if (lhs == product * base) != simple_criterion:
                problems.append("simplified criterion at level t disagrees")
        exchange_ok = True
        for i in range(1, s + 1):
            lhs_ideal = filtration(
                It.with_forms(*forms[: i - 1]) if i > 1 else It, r - i + 2
            )
            rhs_ideal = filtration(chain[i - 1], r - i + 2)
            if not ideal_equal(lhs_ideal, rhs_ideal):
                exchange_ok = False
                problems.append(f"filtration exchange at level t fails for i={i}")
                break
        values["t_filtration_exchange"] = exchange_ok

    if problems:
        return CheckReport(
            check=name,
            instance=label,
            values=values,
            verdict=FALSIFIED,
            witness=_witness(I, forms=[str(f) for f in forms], r=r, t=t,
                             problems=problems),
        )
    verdict = EQUALITY if lhs == product * base else STRICT
    return CheckReport(check=name, instance=label, values=values, verdict=verdict)


# ---------------------------------------------------------------------------
# golden instances


def example1_instances(padding_r: int):
    """The quadric-surface instance with padding_r extra variables adjoined."""
    if padding_r < 0:
        raise RingError("padding must be non-negative")
    names = ["x0", "x1", "x2", "x3"] + [f"y{i}" for i in range(1, padding_r + 1)]
    ring = PolyRing(QQ, names, GREVLEX)
    q = Ideal(ring, [
        ring.parse("x0*x3 - x1*x2"),
        ring.parse("x0^2"),
        ring.parse("x1^2"),
        ring.parse("x0*x1"),
    ], provenance="primary to (x0,x1)")
    plane = Ideal(ring, [ring.parse("x0^2"), ring.parse("x1"), ring.parse("x2")])
    I = intersect(q, plane)
    return ring, q, I


def reproduce_example1(padding_r: int = 0) -> CheckReport:
    """Golden instance: a section by x3 picks up an embedded point."""
    name = "golden-quadric-section"
    ring, q, I = example1_instances(padding_r)
    r = padding_r
    x3 = ring.variable(3)
    label = _instance_label(I, f"padding={padding_r}")

    claims = []

    def claim(desc, got, want):
        claims.append({"claim": desc, "got": _jsonable(got), "want": _jsonable(want),
                       "ok": got == want})

    expected_I = Ideal(ring, [
        ring.parse("x0^2"), ring.parse("x1^2"), ring.parse("x0*x1"),
        ring.parse("x0*x2*x3 - x1*x2^2"),
    ])
    claim("intersection matches its displayed generators", ideal_equal(I, expected_I), True)
    claim("filtration above the embedded level recovers the primary part",
          ideal_equal(filtration(I, r + 1), q), True)
    claim("arith-deg at the embedded level", arith_deg(I, r), 1)

    IF = I.with_forms(x3)
    claim("section ideal matches its displayed generators",
          ideal_equal(IF, expected_I.with_forms(x3)), True)
    claim("arith-deg of the section one level down", arith_deg(IF, r - 1), 2)
    qF = q.with_forms(x3)
    claim("arith-deg of the filtered section one level down", arith_deg(qF, r - 1), 1)
    claim("section inequality is an equality",
          arith_deg(IF, r - 1) - arith_deg(qF, r - 1) == 1 * arith_deg(I, r), True)
    claim("weak bound is strict", arith_deg(IF, r - 1) > arith_deg(I, r), True)

    cert_IF = DecompositionCertificate(
        source=tuple(I.gens) + (x3,),
        components=(
            (tuple(ring.parse(s) for s in ("x0^2", "x1", "x3")), (0, 1, 3)),
            (tuple(ring.parse(s) for s in ("x0^2", "x1^2", "x2^2", "x0*x1", "x3")),
             (0, 1, 2, 3)),
        ),
        note="displayed decomposition of the section",
    )
    ver = verify_certificate(cert_IF, ring)
    claim("section decomposition verifies", ver.fully_verified, True)
    claim("certificate route at the bottom level",
          arith_deg_certificate(ver, r - 1), 2)

    cert_qF = DecompositionCertificate(
        source=tuple(q.gens) + (x3,),
        components=(
            (tuple(ring.parse(s) for s in ("x0^2", "x1", "x3")), (0, 1, 3)),
            (tuple(ring.parse(s) for s in ("x0^2", "x1^2", "x2", "x3", "x0*x1")),
             (0, 1, 2, 3)),
        ),
        note="displayed decomposition of the filtered section",
    )
    ver_q = verify_certificate(cert_qF, ring)
    claim("filtered-section decomposition verifies", ver_q.fully_verified, True)
    claim("certificate route for the filtered section",
          arith_deg_certificate(ver_q, r - 1), 1)

    report = check_hypersurface(I, x3, r)
    claim("full section check verdict", report.verdict, EQUALITY)

    failed = [c for c in claims if not c["ok"]]
    return CheckReport(
        check=name,
        instance=label,
        values={"claims": claims, "padding": padding_r},
        verdict=HOLDS if not failed else FALSIFIED,
        witness=None if not failed else _witness(I, failed=failed),
    )


def example2_ideal(ring: Optional[PolyRing] = None) -> Ideal:
    """The three-component monomial instance, defined as the intersection of
    its displayed primary components."""
    if ring is None:
        ring = PolyRing(QQ, ("x0", "x1", "x2"), GREVLEX)
    c1 = Ideal(ring, [ring.parse("x0^2"), ring.parse("x2")])
    c2 = Ideal(ring, [ring.parse("x1"), ring.parse("x2^2")])
    c3 = Ideal(ring, [ring.parse("x0^2"), ring.parse("x1^2"),
                      ring.parse("x0*x2^2"), ring.parse("x2^3")])
    return intersect(intersect(c1, c2), c3)


def reproduce_example2() -> CheckReport:
    """Golden instance: the sharpness example for the regularity bound chain."""
    name = "golden-regularity-sharpness"
    I = example2_ideal()
    ring = I.ring
    n = ring.n
    label = _instance_label(I)

    claims = []

    def claim(desc, got, want):
        claims.append({"claim": desc, "got": _jsonable(got), "want": _jsonable(want),
                       "ok": got == want})

    claim("minimal generators", sorted(str(g) for g in I.groebner()),
          sorted(["x0^2*x1", "x1^2*x2", "x0*x2^2", "x2^3"]))
    hp = hilbert_polynomial(I)
    claim("constant Hilbert polynomial", str(hp.poly), "4")
    claim("function values settle at the polynomial",
          [hilbert_function(I, ell) for ell in range(4, 9)], [4] * 5)
    claim("arith-deg at the isolated level", arith_deg(I, 0), 4)
    claim("arith-deg below level zero", arith_deg(I, -1), 4)
    m = regularity(I)
    t = depth(I)
    claim("regularity invariant", m, 5)
    claim("depth", t, 0)
    bt = betti_table(I)
    claim("projective dimension", bt.pd(), 3)
    claim("both Betti routes agree", bt == lcm_betti(I.as_monomial()), True)
    binom = comb(m + n - 0 - 1, n - 0)
    claim("bound chain evaluates as displayed",
          [arith_deg(I, 0), int(delta(hp.poly, 0)(m - 1)), binom],
          [4, 4, 15])
    claim("bound chain holds",
          arith_deg(I, 0) <= delta(hp.poly, 0)(m - 1) < binom, True)

    failed = [c for c in claims if not c["ok"]]
    return CheckReport(
        check=name,
        instance=label,
        values={"claims": claims, "m": m, "depth": t},
        verdict=HOLDS if not failed else FALSIFIED,
        witness=None if not failed else _witness(I, failed=failed),
    )
