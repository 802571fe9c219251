"""Cross-module checks on harder sequences: higher order, negative dominant
root, mixed-sign terms."""

import pytest

from recdiff.counting import brute_force_oracle, count_T_S
from recdiff.intervals import midpoint_float
from recdiff.matveev import effective_upper_bounds
from recdiff.recurrences import BUILTIN_SEQUENCES, LinearRecurrence
from recdiff.spectral import analyze_sequence

TETRA = LinearRecurrence("tetranacci", (1, 1, 1, 1), (0, 0, 0, 1))
PADOVAN = LinearRecurrence("padovan", (0, 1, 1), (1, 1, 1))
NEG2 = LinearRecurrence("neg2", (-2,), (1,))
N2N = LinearRecurrence("n2n", (4, -4), (0, 2))


def test_tetranacci_analysis():
    a = analyze_sequence(TETRA)
    assert abs(midpoint_float(a.certificate.modulus()) - 1.9275619754829254) < 1e-9
    assert a.certificate.sigma == 0
    assert float(a.envelope.c_lower) > 0


def test_padovan_analysis():
    a = analyze_sequence(PADOVAN)
    assert abs(midpoint_float(a.certificate.modulus()) - 1.3247179572447460) < 1e-9
    assert float(a.certificate.margin_lower) > 0.4


def test_negative_dominant_root():
    a = analyze_sequence(NEG2)
    assert midpoint_float(a.certificate.root.box.re) == -2.0
    assert midpoint_float(a.certificate.modulus()) == 2.0
    assert [NEG2.term(i) for i in range(5)] == [1, -2, 4, -8, 16]


@pytest.mark.parametrize("seq_u,seq_v,x", [
    (TETRA, BUILTIN_SEQUENCES["pow2"], 50),
    (NEG2, BUILTIN_SEQUENCES["pow3"], 100),     # alternating-sign U
    (PADOVAN, NEG2, 30),                        # alternating-sign V
], ids=("tetra-pow2", "neg2-pow3", "padovan-neg2"))
def test_fast_count_matches_oracle(seq_u, seq_v, x):
    fast = count_T_S(seq_u, seq_v, x)
    oracle = brute_force_oracle(seq_u, seq_v, x,
                                3 * fast.n_cut + 5, 3 * fast.m_cut + 5)
    assert (fast.T, fast.S) == (oracle.T, oracle.S)


def test_effective_bounds_polynomial_coefficient_side():
    # tau = 1 on the V side exercises the |b(m)| floor machinery
    a_p3 = analyze_sequence(BUILTIN_SEQUENCES["pow3"])
    a_n2n = analyze_sequence(N2N)
    eb = effective_upper_bounds(a_p3.certificate, a_n2n.certificate,
                                a_p3.envelope, a_n2n.envelope)
    assert eb.rigorous
    assert eb.m_bound.Q == pytest.approx(1.4426950408889634, rel=1e-12)
    for n in range(0, 30):
        for m in range(1, 25):
            c = BUILTIN_SEQUENCES["pow3"].term(n) - N2N.term(m)
            if abs(c) <= 50:
                assert n <= eb.n_max(abs(c)) and m <= eb.m_max(abs(c))


from recdiff.errors import NoDominantRoot


# a deterministic spread of order <= 2 shapes: negative roots, negative and
# mixed-sign initial terms, non-monotone growth
CROSS_CASES = [
    ((3, -1), (1, 4), 40),
    ((2, 1), (-1, 3), 25),
    ((-3,), (2,), 60),
    ((1, 2), (0, 1), 33),       # roots 2 and -1
    ((-1, 2), (5, -3), 50),
    ((3,), (-1,), 17),
    ((2, 2), (1, 1), 48),
    ((1, 1), (-2, 1), 29),
]


@pytest.mark.parametrize("coeffs,init,x", CROSS_CASES)
def test_varied_sequences_fast_vs_oracle(coeffs, init, x):
    seq = LinearRecurrence("case", coeffs, init)
    pow2 = BUILTIN_SEQUENCES["pow2"]
    fast = count_T_S(seq, pow2, x)
    oracle = brute_force_oracle(seq, pow2, x, 3 * fast.n_cut + 5, 3 * fast.m_cut + 5)
    assert (fast.T, fast.S) == (oracle.T, oracle.S)


def test_binomial_tie_rejected_quickly():
    with pytest.raises(NoDominantRoot):
        analyze_sequence(LinearRecurrence("cbrt2", (0, 0, 2), (1, 1, 1)))   # X^3 = 2
