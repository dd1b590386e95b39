"""The separating function phi(a, x, f) = 1 / (1 + |a| + ||x|| + ||f||).

phi is 1 only at the identity. On H(l_4^8) its values along products u_n v_m
of bounded sequences satisfy the double limit property, as do the three
pieces a product splits into; along unbounded sequences both iterated
limits are 0. Commutators reach any central value with small covectors,
and powers push q(u^n) off to infinity linearly.
"""

from genheis import HeisenbergGroup, PairingSpace, center_surjectivity, phi, phi_dlp_experiment, power_blowup

space = PairingSpace.ell(4, 8, mode="float")
G = HeisenbergGroup(space)
print("phi(identity) =", phi(G.identity, space))

rep = phi_dlp_experiment(space, seeds=[1, 2, 3], bound=10)
for run in rep["runs"]:
    verdicts = {k: run[k]["verdict"] for k in ("phi", "a_dual_norm", "b_norm", "c_pairing")}
    print("seed", run["seed"], verdicts, "assembled gap:", run["assembled"].get("gap"))

rep = phi_dlp_experiment(space, seeds=[1], unbounded=True)
print("unbounded iterated limits:", rep["runs"][0]["s1"], rep["runs"][0]["s2"])

w = center_surjectivity(space, 42.0, epsilon0=0.5)
print(f"\ncommutator reaching 42: center {w.commutator_result.a}, ||f|| = {space.dual_norm(w.f):.6f}")

exact = HeisenbergGroup(PairingSpace.ell(1, 2))
u = exact.element(3, [2, -1], [5, 0])
for r in power_blowup(exact, u, 1000)[::333]:
    print(f"n = {r.n:4d}: ||q(u^n)|| = {r.q_norm}  (n * delta = {r.lower_bound})")
