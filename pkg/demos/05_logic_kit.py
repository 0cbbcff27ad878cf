# # Types, sentences and their Skolem forms
#
# A small toolkit for the finite-type language used in proof mining:
# parse types and formulas, classify quantifier prefixes, Skolemize, force
# sequences to converge with a fixed rate, and build majorants.

from lpforge.logic import (
    as_delta,
    cantor_pair,
    cauchy_hat,
    check_majorizes,
    check_rate,
    classify,
    hat_type,
    is_admissible,
    is_small,
    majorant_M,
    parse_formula,
    parse_type,
    real_code,
    show,
    show_type,
    skolem_normal_form,
)

# Types are written tau(rho) for rho -> tau.

for text in ["0", "X(0)(0)", "0(X)", "0(0(X))"]:
    t = parse_type(text)
    print(f"{text:8s} small={is_small(t)!s:5s} admissible={is_admissible(t)!s:5s} hat={show_type(hat_type(t))}")

# Classify a few sentences.

for text in [
    "forall x:X. forall y:X. norm(x + y) <=_R norm(x) + norm(y)",
    "forall a:0. exists b:0 <~ a. forall c:X. b <=_0 a",
    "forall a:0. exists b:0. b <=_0 a",
]:
    print(classify(parse_formula(text)), "|", text)

# The bounded existential block becomes a bounded function quantifier.

d = as_delta(parse_formula("forall f:1. exists n:0 <~ f(0). forall m:0. f(m) <=_0 n or n <_0 m"))
s = skolem_normal_form(d)
print(show(s))
print("reparsed class:", classify(parse_formula(show(s))))

# Any sequence can be forced into a Cauchy sequence with rate 2^(-n+3).

xs = [0, 0.5, 0.6, 0.62, 5.0, 5.0, 7.0, 1.0]
out = cauchy_hat(xs, lambda a, b: abs(a - b), len(xs) - 1)
print("input ", xs)
print("output", out, "rate ok:", check_rate(out, lambda a, b: abs(a - b)))

# Cantor pairing and the majorant of an exponent p <= b.

print("j(1, 2) =", cantor_pair(1, 2))
M = majorant_M(3)
print("M(3)(0..4) =", [M(n) for n in range(5)])
print("M(3) majorizes the code of p = 2.5:", check_majorizes(M, lambda n: real_code(2.5, n), "1", horizon=64))
