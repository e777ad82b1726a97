"""Smoke test for the orbibraid extension module."""

import orbibraid as ob

a2 = ob.ArtinGroup("A", 2)
assert a2.equal("g1 g2 g1", "g2 g1 g2")
assert not a2.equal("g1", "g2")
print("A2 delta:", a2.delta(), "->", a2.normal_form(a2.delta()))

k3 = ob.Signature.for_row("D", 3)
tau = ob.Braid(k3, "tL")
h1 = ob.embed("D", 3, "g1")
h2 = ob.embed("D", 3, "g2")
assert ob.equal_in_zk(tau * h1 * tau.inverse(), h2)
assert tau.quotient_class("D") == "1 mod 2"
print("tau h1 tau^-1 = h2 in", k3)

w = ob.Braid(ob.Signature("n=2;left=puncture"), "s1 tL s1 tL s1' tL' s1' tL'")
steps = w.certify(8)
assert len(w) == 8
assert steps is not None
print("certificate with", len(steps), "steps")

punctured = ob.Signature("n=3;left=puncture")
assert ob.distinct(ob.Braid(punctured, "s1"), ob.Braid(punctured, "s2"))

bad = [r for r in ob.verify("B", 3) if not r[1]]
assert not bad, bad
print(ob.Braid(ob.Signature("n=2;left=cone2"), "tL s1 tL").ascii(), end="")
print("ok")
