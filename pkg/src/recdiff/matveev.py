"""Matveev's lower bound for linear forms in logarithms, certified evaluation
of the linear form itself, and the effective upper-bound chain.

The chain composes growth envelopes with the Matveev bound to produce
coefficient records n_max(|c|) = P + Q log|c| + R (loglog|c|)^2 (Q exactly
1/log|dominant root|).  The constants are astronomically large, so the
records are verifiable artifacts of effectivity, not enumeration cutoffs;
every constant is written to a provenance ledger with its defining formula
and a rigor flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import PrecisionExhausted, UnsupportedDegree
from .heights import AlgebraicNumber, compound_height, log_height
from .intervals import (
    IntervalField,
    certainly_greater,
    lower_float,
    midpoint_float,
    refinement_precisions,
    upper_float,
)
from .quadratic import QuadraticElement, square_free_core
from .spectral import BinetDecomposition, DominantRootCertificate, GrowthEnvelope


@dataclass(frozen=True)
class MatveevInput:
    t: int                 # number of logarithms
    D: int                 # field degree
    B: float               # >= max |b_i|
    A: tuple               # A_1..A_t, each >= max{D h(gamma_i), |log gamma_i|, 0.16}

    def __post_init__(self):
        if self.t < 1 or self.D < 1:
            raise ValueError("t and D must be positive integers")
        if self.B < 1:
            raise ValueError("B must be >= 1")
        if len(self.A) != self.t:
            raise ValueError("need exactly t values A_1..A_t")
        if any(a < 0.16 for a in self.A):
            raise ValueError("each A_i must be >= 0.16")


def matveev_lower_bound(inp: MatveevInput) -> float:
    """-3 * 30^(t+4) * (t+1)^5.5 * D^2 (1+log D)(1+log tB) A_1...A_t."""
    t, D = inp.t, inp.D
    value = 3.0 * 30.0 ** (t + 4) * (t + 1) ** 5.5 * D * D
    value *= (1.0 + math.log(D)) * (1.0 + math.log(t * inp.B))
    for a in inp.A:
        value *= a
    return -value


def matveev_constant_c3d(D: int) -> float:
    """The t = 3 Matveev constant C(3, D) = 3 * 30^7 * 4^5.5 * D^2 (1+log D)."""
    return 3.0 * 30.0 ** 7 * 4.0 ** 5.5 * D * D * (1.0 + math.log(D))


@dataclass(eq=False)
class LinearFormSample:
    n: int
    m: int
    lambda_abs: object          # certified interval for |Lambda|
    status: str                 # "nonzero" | "zero" | "undecided"
    matveev_floor: float | None = None

    @property
    def log_lambda_lower(self) -> float:
        return math.log(lower_float(self.lambda_abs))


def _exact_dominant_side(decomp, cert, idx):
    if decomp.exact is None:
        return None
    i = cert.root_index
    coeffs = decomp.exact[i]
    acc = QuadraticElement.from_rational(0)
    power = QuadraticElement.from_rational(1)
    for c in coeffs:
        acc = acc + c * power
        power = power * idx
    try:
        return acc * (decomp.spectrum.roots[i].exact ** idx)
    except UnsupportedDegree:
        return None


def _decomposition_at(seq, field, check_bound=200):
    from .spectral import _binet_at, _spectrum_at

    spectrum = _spectrum_at(seq, field)
    if spectrum is None:
        return None
    return _binet_at(seq, spectrum, field, check_bound)


def _dominant_index(decomp):
    roots = decomp.spectrum.roots
    return max(range(len(roots)), key=lambda i: lower_float(roots[i].modulus()))


def lambda_value(decompU: BinetDecomposition, decompV: BinetDecomposition,
                 n: int, m: int, certU: DominantRootCertificate = None,
                 certV: DominantRootCertificate = None,
                 start_bits: int = 192) -> LinearFormSample:
    """Certified interval for |Lambda| = |a(n) alpha^n / (b(m) beta^m) - 1|.

    Zero detection is exact in degree <= 2 (quadratic-field arithmetic);
    otherwise an interval containing zero is returned flagged "undecided".
    """
    from .spectral import analyze_sequence

    if certU is None:
        certU = analyze_sequence(decompU.sequence).certificate
    if certV is None:
        certV = analyze_sequence(decompV.sequence).certificate

    status = None
    exact_u = _exact_dominant_side(decompU, certU, n)
    exact_v = _exact_dominant_side(decompV, certV, m)
    if exact_u is not None and exact_v is not None:
        from .independence import _exact_equal
        if exact_v.is_zero():
            raise ZeroDivisionError("b(m) beta^m = 0 exactly")
        status = "zero" if _exact_equal(exact_u, exact_v) else "nonzero"

    undecided = None
    for bits in refinement_precisions(start_bits):
        field = IntervalField(bits)
        du = decompU if bits <= decompU.precision_bits \
            else _decomposition_at(decompU.sequence, field)
        dv = decompV if bits <= decompV.precision_bits \
            else _decomposition_at(decompV.sequence, field)
        if du is None or dv is None:
            continue
        iu, iv = _dominant_index(du), _dominant_index(dv)
        num = du.coefficient_value(iu, n) * (du.spectrum.roots[iu].box ** n)
        den = dv.coefficient_value(iv, m) * (dv.spectrum.roots[iv].box ** m)
        if den.contains_zero():
            continue
        lam = (num / den - 1).modulus()
        if status == "zero":
            return LinearFormSample(n, m, lam, "zero")
        if certainly_greater(lam, field.real(0)):
            return LinearFormSample(n, m, lam, "nonzero")
        undecided = lam
        if status == "nonzero":
            continue        # exact says nonzero; refine until the interval shows it
    if status is not None or undecided is None:
        raise PrecisionExhausted("|Lambda| interval did not separate from zero")
    return LinearFormSample(n, m, undecided, "undecided")


# ---------------------------------------------------------------------------
# effective upper-bound chain


@dataclass(frozen=True)
class ConstantRecord:
    name: str
    value: float
    formula: str
    rigorous: bool = True


@dataclass(frozen=True)
class BoundRecord:
    """index_max(|c|) = P + Q log c + R (loglog c)^2 evaluated at c = max(|c|, c0)."""

    P: float
    Q: float
    R: float

    def evaluate(self, c_abs, c0: float) -> float:
        c_eff = max(abs(c_abs), c0)
        lc = math.log(c_eff)
        return self.P + self.Q * lc + self.R * math.log(lc) ** 2


@dataclass(eq=False)
class EffectiveBounds:
    n_bound: BoundRecord
    m_bound: BoundRecord
    c0: float
    ledger: tuple
    rigorous: bool

    def n_max(self, c_abs) -> float:
        return self.n_bound.evaluate(c_abs, self.c0)

    def m_max(self, c_abs) -> float:
        return self.m_bound.evaluate(c_abs, self.c0)

    def ledger_value(self, name: str) -> float:
        for rec in self.ledger:
            if rec.name == name:
                return rec.value
        raise KeyError(name)


def _log_plus(x: float) -> float:
    return max(0.0, math.log(x)) if x > 0 else 0.0


def _coeff_poly_abs_inf(decomp, idx, sigma, from_n):
    """(threshold, inf) with |poly(n)| >= inf > 0 certified for all n >= threshold."""
    coeffs = decomp.coefficients[idx]
    lead_low = lower_float(coeffs[sigma].modulus())
    if lead_low <= 0:
        return None
    if sigma == 0:
        return from_n, lead_low
    rest = sum(upper_float(c.modulus()) for c in coeffs[:sigma])
    n2 = max(from_n + 1, int(2.0 * rest / lead_low) + 2, 64)
    vals = {n: lower_float(decomp.coefficient_value(idx, n).modulus())
            for n in range(from_n, n2 + 1)}
    floor_tail = lead_low * (n2 + 1) ** sigma / 2.0   # |p(n)| >= |lead| n^sigma / 2 beyond n2
    for m0 in range(from_n, n2 + 1):
        inf_val = min([vals[n] for n in range(m0, n2 + 1)] + [floor_tail])
        if inf_val > 0:
            return m0, inf_val
    return None


def _compositum_degree(poly_a, poly_b) -> int:
    da, db = len(poly_a) - 1, len(poly_b) - 1
    if da == 1 and db == 1:
        return 1
    if da == 1 or db == 1:
        return max(da, db) if min(da, db) == 1 else da * db
    if da == 2 and db == 2:
        disc_a = poly_a[1] ** 2 - 4 * poly_a[0] * poly_a[2]
        disc_b = poly_b[1] ** 2 - 4 * poly_b[0] * poly_b[2]
        if square_free_core(disc_a)[0] == square_free_core(disc_b)[0]:
            return 2
        return 4
    return da * db


def _root_log_term_upper(cert, field) -> float:
    """Upper bound for |log root| (principal branch)."""
    mod = cert.modulus()
    log_mod = field.log(mod)
    root = cert.root
    if root.is_real and lower_float(root.box.re) > 0:
        return upper_float(log_mod)
    pi_up = upper_float(field.pi())
    return math.hypot(upper_float(log_mod), pi_up)


def _matveev_a_value(cert, field, D) -> float:
    gamma = AlgebraicNumber(cert.min_poly, cert.root.box,
                            len(cert.min_poly) - 1, cert.root.exact)
    h = upper_float(log_height(gamma))
    return max(D * h, _root_log_term_upper(cert, field), 0.16)


def _rational_poly_k_constant(coeffs) -> float | None:
    """K with h(p(n)) <= K log n for n >= 2, for rational coefficients."""
    fracs = []
    for c in coeffs:
        if not c.is_rational:
            return None
        fracs.append(c.a)
    deg = len(fracs) - 1
    denom = 1
    for f in fracs:
        denom = denom * f.denominator // math.gcd(denom, f.denominator)
    coeff_sum = float(sum(abs(f) for f in fracs))
    return deg + _log_plus(denom * (coeff_sum + 1.0)) / math.log(2)


def _a1_constant(decompU, certU, decompV, certV, D, field):
    """(C10, rigorous, formula) with A_1 = C10 log max(n, m) valid for n, m >= 2."""
    pu = decompU.exact[certU.root_index] if decompU.exact is not None else None
    qv = decompV.exact[certV.root_index] if decompV.exact is not None else None
    if pu is not None and qv is not None:
        if len(pu) == 1 and len(qv) == 1:
            try:
                ratio = pu[0] / qv[0]
                h = compound_height(ratio)
                box = ratio.box(field)
                log_abs = upper_float(field.log(box.modulus()))
                if ratio.is_rational and ratio.a > 0 or \
                        (not ratio.is_rational and ratio.d > 0 and
                         lower_float(box.re) > 0):
                    log_term = abs(log_abs)
                else:
                    log_term = math.hypot(log_abs, upper_float(field.pi()))
                c10 = max(D * h, log_term, 0.16) / math.log(2)
                return c10, True, "max{D h(a/b), |log(a/b)|, 0.16}/log 2 (constant ratio)"
            except UnsupportedDegree:
                pass
        else:
            kp = _rational_poly_k_constant(pu)
            kq = _rational_poly_k_constant(qv)
            if kp is not None and kq is not None:
                c10 = max(D * (kp + kq), 0.16 / math.log(2))
                return (c10, True,
                        "D (K_p + K_q), K = deg + log(den (1+sum|coef|))/log 2")
    # empirical fallback: sampled max of the height quantity over a window
    best = 0.16 / math.log(2)
    iu, iv = certU.root_index, certV.root_index
    for n in range(2, 62, 6):
        for m in range(2, 62, 6):
            num = decompU.coefficient_value(iu, n)
            den = decompV.coefficient_value(iv, m)
            if den.contains_zero():
                continue
            ratio = num / den
            mod = ratio.modulus()
            if lower_float(mod) <= 0:
                continue
            happrox = abs(math.log(midpoint_float(mod)))   # crude height stand-in
            best = max(best, max(D * happrox, happrox, 0.16) / math.log(max(n, m)))
    return 1.5 * best, False, "1.5 x sampled max of the A_1 quantity (non-rigorous)"


def _fixpoint_threshold(fn, start=3.0, rounds=256) -> float:
    """Smallest x (by doubling) with fn(y) <= y for all y >= x, for increasing
    gaps; fn must be eventually dominated by the identity."""
    x = max(start, 3.0)
    for _ in range(rounds):
        if fn(x) <= x:
            return x
        x *= 2.0
    return x


def _case2_constants(prefix, suffix, C_boundfor, la, lb, lap, lbp, sigma_main,
                     C7, C8, C9, C11, C1_main, C4_other, tau_other, ledger):
    """Case 2 block: the main index n satisfies |c| < (main inner base)^n.

    Returns (C17, C18, threshold) with (other index) <= C17 (log n)^2 and
    log|c| >= n log|main root| - C18 (log n)^2 for n >= threshold.
    """
    C15 = C_boundfor / 2.0 + (la + lap) / lb + sigma_main * (1.0 / math.e) / lb
    inv_gamma = max((math.exp(lap) / math.exp(la)) ** (1.0 / C15),
                    math.exp(lbp) / math.exp(lb))
    log_gamma = -math.log(inv_gamma)
    C16 = C7 + C8 + C9
    C17 = (C11 * (1.0 + _log_plus(C15)) ** 2 + _log_plus(C16)) / log_gamma
    C18 = C17 * lb + _log_plus(C4_other) + abs(math.log(C1_main)) \
        + tau_other * _log_plus(C17) + 2.0 * tau_other
    ledger.append(ConstantRecord(prefix + "15" + suffix, C15,
                                 "bound-for constant/2 + (log main + log main')/log other"
                                 " + sigma/(e log other)"))
    ledger.append(ConstantRecord(prefix + "16" + suffix, C16,
                                 "C7 + C8 + C9 (case 2 envelope)"))
    ledger.append(ConstantRecord(prefix + "17" + suffix, C17,
                                 "(C11 (1+log+ C15)^2 + log+ C16)/log gamma"))
    ledger.append(ConstantRecord(prefix + "18" + suffix, C18,
                                 "C17 log other + log+ C_upper + |log C_lower|"
                                 " + tau log+ C17 + 2 tau"))
    # growth validity: C1 alpha^n >= C4 (C17 (log n)^2)^tau beta^(C17 (log n)^2) + 2
    def growth_gap(x):
        lx = math.log(x)
        rhs = math.log(C4_other + 2.0) + tau_other * (_log_plus(C17) + 2.0 * math.log(max(lx, 1.0))) \
            + C17 * lx * lx * lb + 2.0
        return (rhs - math.log(C1_main)) / la

    thr_growth = _fixpoint_threshold(growth_gap)
    # mlogm lemma threshold: n >= e^(sqrt2/sqrt(c)) and k^2 c^2 (log n)^4 <= n
    k_ml = 1.0 / la
    c_ml = C18 / la
    thr_ml1 = math.exp(math.sqrt(2.0) / math.sqrt(c_ml)) if c_ml > 0 else 3.0
    thr_ml2 = _fixpoint_threshold(lambda x: (k_ml * c_ml) ** 2 * math.log(x) ** 4)
    return C17, C18, max(thr_growth, thr_ml1, thr_ml2, 3.0)


def _directional_chain(certU, certV, envU, envV, C10, A2, A3, D, ledger, primed=False):
    """One directional chain (wlog |alpha|^n <= |beta|^m); returns the branch
    bound data for (n, m)."""
    field = IntervalField(192)
    la = midpoint_float(field.log(certU.modulus()))
    lb = midpoint_float(field.log(certV.modulus()))
    lap = math.log(float(envU.alpha_prime))
    lbp = math.log(float(envV.alpha_prime))
    C1 = float(envU.c_lower)
    C2 = float(envU.c_upper)
    C3 = float(envV.c_lower)
    C4 = float(envV.c_upper)
    sigma, tau = envU.sigma, envV.sigma
    p = "C" if not primed else "C'"

    decompV = certV.decomposition
    b_inf = _coeff_poly_abs_inf(decompV, certV.root_index, envV.sigma, envV.n0)
    if b_inf is None:
        raise PrecisionExhausted("cannot bound |b(m)| away from zero")
    m_floor, b_min = b_inf

    C5 = (math.log(C4) - math.log(C1) + 2.0 * math.log(2.0)) / la
    C6 = (math.log(C2) - math.log(C3) + 2.0 * math.log(2.0)) / lb
    C7 = float(envU.a_prime) / b_min
    C8 = float(envV.a_prime) / b_min
    C9 = 1.0 / b_min
    C11 = matveev_constant_c3d(D) * (1.0 + (1.0 + math.log(3.0)) / math.log(2.0)) \
        * C10 * A2 * A3
    C12 = C7 + C8 + C9
    C13 = max(1.0 / lap, 1.0 / lbp)
    C14 = C11 * (1.0 + _log_plus(C13)) ** 2 + _log_plus(C12)

    ledger.extend([
        ConstantRecord(p + "5", C5, "(log C4 - log C1 + 2 log 2)/log a"),
        ConstantRecord(p + "6", C6, "(log C2 - log C3 + 2 log 2)/log b"),
        ConstantRecord(p + "7", C7, "a'/inf|b(m)|"),
        ConstantRecord(p + "8", C8, "b'/inf|b(m)|"),
        ConstantRecord(p + "9", C9, "1/inf|b(m)|"),
        ConstantRecord(p + "11", C11,
                       "C(3,D) (1 + (1+log 3)/log 2) C10 A2 A3"),
        ConstantRecord(p + "12", C12, "C7 + C8 + C9 (case 1 envelope)"),
        ConstantRecord(p + "13", C13, "max(1/log a', 1/log b')"),
        ConstantRecord(p + "14", C14, "C11 (1 + log+ C13)^2 + log+ C12"),
    ])

    # case 2a bounds n; case 2b is its mirror and bounds m
    C17a, C18a, thr2a = _case2_constants(p, "", C6, la, lb, lap, lbp, sigma,
                                         C7, C8, C9, C11, C1, C4, tau, ledger)
    C17b, C18b, thr2b = _case2_constants(p, "b", C5, lb, la, lbp, lap, tau,
                                         C7, C8, C9, C11, C3, C2, sigma, ledger)

    r_n = max(C14 / la, 4.0 * C18a / la)
    r_m = max(C14 / lb, 4.0 * C18b / lb)
    p_n = max(float(envU.n0) + 1.0, thr2a, 3.0)
    p_m = max(float(envV.n0) + 1.0, float(m_floor) + 1.0, thr2b, 3.0)
    return {
        "q_n": 1.0 / la, "q_m": 1.0 / lb,
        "r_n": r_n, "r_m": r_m, "p_n": p_n, "p_m": p_m,
        "la": la, "lb": lb,
        "c17a": C17a, "c17b": C17b,
        "c0_candidates": [math.e ** math.e, math.exp(2.0 * la), math.exp(2.0 * lb)],
    }


def effective_upper_bounds(certU: DominantRootCertificate,
                           certV: DominantRootCertificate,
                           envU: GrowthEnvelope, envV: GrowthEnvelope,
                           independence=None) -> EffectiveBounds:
    """Compose the effective chain into n_max/m_max coefficient records."""
    from .independence import multiplicative_independence

    field = IntervalField(192)
    alpha = AlgebraicNumber(certU.min_poly, certU.root.box,
                            len(certU.min_poly) - 1, certU.root.exact, "alpha")
    beta = AlgebraicNumber(certV.min_poly, certV.root.box,
                           len(certV.min_poly) - 1, certV.root.exact, "beta")
    rigorous = True
    if independence is None:
        try:
            independence = multiplicative_independence(alpha, beta)
        except PrecisionExhausted:
            independence = None
    if independence is not None:
        if independence.status == "dependent":
            raise ValueError("dominant roots are multiplicatively dependent: "
                             "alpha^%d = beta^%d" % (independence.n, independence.m))
        if independence.status == "unknown":
            rigorous = False

    D = _compositum_degree(certU.min_poly, certV.min_poly)
    A2 = _matveev_a_value(certU, field, D)
    A3 = _matveev_a_value(certV, field, D)
    decompU, decompV = certU.decomposition, certV.decomposition
    C10, c10_rig, c10_formula = _a1_constant(decompU, certU, decompV, certV, D, field)
    rigorous = rigorous and c10_rig

    ledger = [
        ConstantRecord("D", float(D), "[Q(alpha, beta):Q] (upper bound)"),
        ConstantRecord("A2", A2, "max{D h(alpha), |log alpha|, 0.16}"),
        ConstantRecord("A3", A3, "max{D h(beta), |log beta|, 0.16}"),
        ConstantRecord("C10", C10, c10_formula, c10_rig),
    ]

    chain_a = _directional_chain(certU, certV, envU, envV, C10, A2, A3, D, ledger)
    chain_b = _directional_chain(certV, certU, envV, envU, C10, A3, A2, D, ledger,
                                 primed=True)
    # branch B bounds (m, n) in its own orientation; swap back
    bounds_n = [(chain_a["q_n"], chain_a["r_n"], chain_a["p_n"]),
                (chain_b["q_m"], chain_b["r_m"], chain_b["p_m"])]
    bounds_m = [(chain_a["q_m"], chain_a["r_m"], chain_a["p_m"]),
                (chain_b["q_n"], chain_b["r_n"], chain_b["p_n"])]

    q_n = bounds_n[0][0]
    q_m = bounds_m[0][0]
    r_n = max(b[1] for b in bounds_n)
    r_m = max(b[1] for b in bounds_m)
    p_n = max(b[2] for b in bounds_n)
    p_m = max(b[2] for b in bounds_m)

    c0 = max([16.0] + chain_a["c0_candidates"] + chain_b["c0_candidates"])

    # small-index contributions: in case 2a of branch A m <= C17 (log n)^2 with
    # n <= n_max; the mirrored statements contribute symmetric R terms
    scale_n = 1.0 + _log_plus(p_n + q_n + r_n) + 3.0
    scale_m = 1.0 + _log_plus(p_m + q_m + r_m) + 3.0
    r_m = max(r_m, chain_a["c17a"] * scale_n ** 2, chain_b["c17b"] * scale_n ** 2)
    r_n = max(r_n, chain_a["c17b"] * scale_m ** 2, chain_b["c17a"] * scale_m ** 2)

    # Lambda = 0 branch: C0 max{n,m} <= C10 log 2 * log max{n,m}
    from .heights import height_constant_probe
    try:
        probe = height_constant_probe(alpha, beta, 8, assume_independent=True)
        c0_height = probe.c0_emp
        c0_rig = alpha.exact is not None and alpha.exact.is_rational and \
            beta.exact is not None and beta.exact.is_rational
    except UnsupportedDegree:
        c0_height, c0_rig = None, False
    if c0_height and c0_height > 0:
        ratio = C10 * math.log(2.0) / c0_height
        zero_branch = _fixpoint_threshold(lambda x: ratio * math.log(x))
        ledger.append(ConstantRecord("C0", c0_height,
                                     "empirical height-growth witness (probe minimum)",
                                     c0_rig))
        rigorous = rigorous and c0_rig
        p_n = max(p_n, zero_branch)
        p_m = max(p_m, zero_branch)
    else:
        rigorous = False

    ledger.append(ConstantRecord("c0", c0, "validity threshold for |c|"))
    ledger.append(ConstantRecord("Q_n", q_n, "1/log|alpha| (exact)"))
    ledger.append(ConstantRecord("Q_m", q_m, "1/log|beta| (exact)"))
    ledger.append(ConstantRecord("R_n", r_n, "max over cases of the (loglog)^2 slope"))
    ledger.append(ConstantRecord("R_m", r_m, "max over cases of the (loglog)^2 slope"))
    ledger.append(ConstantRecord("P_n", p_n, "max over cases of the additive threshold"))
    ledger.append(ConstantRecord("P_m", p_m, "max over cases of the additive threshold"))

    return EffectiveBounds(BoundRecord(p_n, q_n, r_n), BoundRecord(p_m, q_m, r_m),
                           c0, tuple(ledger), rigorous)
