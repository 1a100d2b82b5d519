"""Smoke test for the presslab_py extension. Run after `pip install -e crates/python`."""

import presslab_py as pl

g = pl.Graph(3, edges=[(0, 1), (0, 2), (1, 2)], loops=[0, 1, 2])
assert g.n == 3
assert g.rank() == 1, g.rank()

lam = pl.lambda_generator(3)
assert lam.count_sequences() == 2
seqs = sorted(lam.sequences())
assert seqs == [[0, 1, 2], [0, 2, 1]], seqs
root = lam.instructional_root([0, 1, 2])
assert [root[i][i] for i in range(3)] == [1, 1, 1]
assert lam.is_autonomous()

fam = lam.instructional_family()
assert len(fam) == 1 and len(fam[0][1]) == 2

p = pl.Poset.lambda_family(3)
assert p.is_vposet() and p.is_autonomous() and p.is_autonomous(oracle=True)
assert p.count_linear_extensions() == 2
tree = p.decompose()
assert tree is not None
gen = pl.synthesize(tree)
assert gen.instructional_poset(list(range(gen.n))) == p
assert pl.Poset.from_text(p.to_text()) == p
assert all(h.is_autonomous() for h in p.generators())

x = pl.Poset.x_family(5)
assert not x.is_vposet() and x.decompose() is None
assert not pl.recognize(4, [(0, 2), (0, 3), (1, 2), (1, 3)])

s = pl.Poset(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).stats()
assert s["width"] == 2 and s["components"] == 1

try:
    pl.Graph(2, loops=[5])
except ValueError:
    pass
else:
    raise AssertionError("bad vertex accepted")

print("python smoke test: ok")
