#!/usr/bin/env python3
"""Writes crates/core/data/catalog.toml.

Vectors are given in the catalog frame: the first r coordinates are the
pairings with the simple coroots of the centralizer (in the model order of
the written type), the remaining `central_rank` coordinates are central.
"""
import pathlib

entries = []


def e(i, n):
    v = [0] * n
    v[i] = 1
    return v


def add(name, centralizer, lattice, cone=None, roots=(), central=0, weights=None, provenance=""):
    entries.append(dict(name=name, centralizer=centralizer, central=central, lattice=lattice,
                        cone=cone if cone is not None else lattice, roots=list(roots),
                        weights=weights, provenance=provenance))


def block(*parts):
    """Concatenates coordinate blocks: list of (vector-list, width)."""
    width = sum(w for _, w in parts)
    out = []
    off = 0
    for vecs, w in parts:
        for v in vecs:
            out.append([0] * off + list(v) + [0] * (width - off - w))
        off += w
    return out


def chain_roots(r, off=0, width=None, last_doubled=False):
    width = width if width is not None else r
    roots = []
    for i in range(r - 1):
        v = [0] * width
        v[off + i] = 1
        v[off + i + 1] = 1
        roots.append(v)
    if last_doubled and r >= 1:
        # the short simple root enters doubled
        v = [0] * width
        v[off + r - 1] = 2
        roots.append(v)
    return roots


def ident(r):
    return [e(i, r) for i in range(r)]


# rank-one models for SL(2) and SO(3)
add("C^2 for SL(2)", "A1", [[1]], weights=[[1]], provenance="defining representation")
add("SL(2)/C*", "A1", [[2]], roots=[[1]], weights=[[1]], provenance="symmetric space, normalizer of a torus index two")
add("SL(2)/N(C*)", "A1", [[4]], roots=[[2]], weights=[[1]], provenance="symmetric space")
add("SO(3)/SO(2)", "A1", [[2]], roots=[[2]], weights=[[2]], provenance="symmetric space")
add("SO(3)/O(2)", "A1", [[4]], roots=[[2]], weights=[[2]], provenance="symmetric space")

# defining representations of SL(n)
for n in range(3, 7):
    add(f"C^{n} for SL({n})", f"A{n-1}", [e(0, n - 1)], provenance="defining representation")

# full dominant monoids of SL(n)
for n in range(3, 7):
    name = f"SL({n})/Sp({n-1})" if n % 2 else f"SL({n}) x^Sp({n}) C^{n}"
    add(name, f"A{n-1}", ident(n - 1), roots=chain_roots(n - 1),
        provenance="every dominant weight occurs exactly once")

# SL(n) as S(GL(n) x GL(n))-variety: monoid {(l, l*)}
for n in range(2, 5):
    r = n - 1
    lat = [e(i, r) + e(i, r) for i in range(r)]
    roots = [e(i, r) + e(i, r) for i in range(r)]
    add(f"SL({n}) as S(GL({n})xGL({n}))-variety", f"A{r}xA{r}", lat, roots=roots,
        provenance="group variety with left and right multiplication")

# groups as (L x L)-varieties
for name, t, lat in [
    ("SL(2)xSL(2) as a group variety", "A1xA1", [[1, 0, 1, 0], [0, 1, 0, 1]]),
    ("SO(4) as a group variety", "A1xA1", [[2, 0, 2, 0], [1, 1, 1, 1]]),
    ("Sp(4) as a group variety", "C2", [[1, 0, 1, 0], [0, 1, 0, 1]]),
    ("G2 as a group variety", "G2", [[1, 0, 1, 0], [0, 1, 0, 1]]),
]:
    r = len(lat[0]) // 2
    typ = f"{t}x{t}"
    diag = [[a + b for a, b in zip(e(i, 2 * r), e(r + i, 2 * r))] for i in range(r)]
    add(name, typ, lat, cone=diag, roots=diag, provenance="group variety with left and right multiplication")

# Sp(2k) x Sp(2m): defining representation of the first factor
for k in range(1, 5):
    for m in range(0, 5 - k):
        if k == 1 and m == 0:
            continue
        t = f"C{k}" if m == 0 else f"C{k}xC{m}"
        add(f"C^{2*k} for Sp({2*k})xSp({2*m})" if m else f"C^{2*k} for Sp({2*k})", t, [e(0, k + m)],
            provenance="defining representation of the first factor")

# full dominant monoids Y_k x Y_m of Sp(2k) x Sp(2m)
for k in range(1, 5):
    for m in range(0, min(k, 4 - k) + 1):
        if k == 1 and m == 0:
            continue
        t = f"C{k}" if m == 0 else f"C{k}xC{m}"
        roots = chain_roots(k, 0, k + m) + chain_roots(m, k, k + m)
        name = f"Y_{k}" if m == 0 else f"Y_{k} x Y_{m}"
        add(name, t, ident(k + m), roots=roots, provenance="every dominant weight occurs exactly once")

# SO(2n+1)/GL(n) and products with Y_i
def z_lattice(n):
    return [e(i, n) for i in range(n - 1)] + [[0] * (n - 1) + [2]]


for n in range(2, 4):
    add(f"Z_{n} = SO({2*n+1})/GL({n})", f"B{n}", z_lattice(n), cone=ident(n),
        roots=chain_roots(n, last_doubled=True), provenance="every dominant weight of SO(2n+1) occurs exactly once")
for i, j in [(1, 1), (1, 2), (2, 1)]:
    w = i + j
    lat = block((ident(i), i), (z_lattice(j), j))
    cone = block((ident(i), i), (ident(j), j))
    roots = chain_roots(i, 0, w) + chain_roots(j, i, w, last_doubled=True)
    add(f"Y_{i} x Z_{j}", f"C{i}xB{j}", lat, cone=cone, roots=roots,
        provenance="product of full dominant models")

# SL(2) x C*: rank-two models with a one-dimensional centre
for n in range(1, 7):
    add(f"SL(2)/mu_{n}", "A1", [[2, 0], [n % 2, 1]], cone=[[n, 1], [n, -1]], roots=[[1]], central=1,
        provenance="SL(2) with the centre acting through the right torus")
add("SL(2)/C* x C", "A1", [[2, 0], [0, 1]], cone=[[1, 0], [0, 1]], roots=[[1]], central=1,
    provenance="product with a line")
for m in range(1, 5):
    add(f"SL(2) x^C* C_{m}", "A1", [[2, 0], [m % 2, 1]], cone=[[1, 0], [m, 1]], roots=[[1]], central=1,
        provenance="line bundle over SL(2)/C*")

# tori
for k in range(1, 5):
    add(f"C^{k} for a torus", "trivial", ident(k), central=k, provenance="characters form a basis")

complete = [dict(centralizer="A1", central=0, rank=1,
                 note="every smooth affine spherical variety of rank one for SL(2) or SO(3) is listed; "
                      "this monoid is not the weight monoid of any smooth one")]


def q(v):
    return "[" + ", ".join(f'"{x}"' for x in v) + "]"


def mat(m):
    return "[" + ", ".join(q(v) for v in m) + "]"


def ints(m):
    return "[" + ", ".join("[" + ", ".join(str(x) for x in v) + "]" for v in m) + "]"


lines = ["# Local models: smooth affine spherical varieties of a centralizer.",
         "# Vectors: coroot pairings (model order of `centralizer`), then central coordinates.",
         "format = 1", ""]
for x in entries:
    lines.append("[[model]]")
    lines.append(f'name = "{x["name"]}"')
    lines.append(f'centralizer = "{x["centralizer"]}"')
    if x["central"]:
        lines.append(f'central_rank = {x["central"]}')
    lines.append(f"lattice = {mat(x['lattice'])}")
    lines.append(f"cone = {mat(x['cone'])}")
    lines.append(f"spherical_roots = {ints(x['roots'])}")
    if x["weights"] is not None:
        lines.append(f"weight_pairings = {mat(x['weights'])}")
    lines.append(f'provenance = "{x["provenance"]}"')
    lines.append("")
for c in complete:
    lines.append("[[complete]]")
    lines.append(f'centralizer = "{c["centralizer"]}"')
    lines.append(f'central_rank = {c["central"]}')
    lines.append(f'rank = {c["rank"]}')
    lines.append(f'note = "{c["note"]}"')
    lines.append("")

out = pathlib.Path(__file__).resolve().parent.parent / "crates" / "core" / "data" / "catalog.toml"
out.write_text("\n".join(lines))
print(f"wrote {len(entries)} models to {out}")
