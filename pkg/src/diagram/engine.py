"""Graphical calculus on fusion-tree bases
Every word is referred to its left-nested tree; tensor products and braidings
re-associate through F-moves and act on fusion channels through R-symbols
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from src.diagram.morphism import Morphism
from src.diagram.objects import Obj, Word, dual_word
from src.errors import ConsistencyError, NotEndomorphism, ShapeMismatch

TreeKey = Tuple[Tuple[int, int], ...]
Sector = Tuple[int, int, int, int, int, int]


@dataclass
class SplitBasis:
    """Basis (x, y, ν, ta, tb) of hom(c, wa ⊗ wb) and its relation to left-nested trees"""
    elements: List[tuple]
    sectors: List[Sector]
    position: Dict[tuple, int]
    to_split: np.ndarray
    from_split: np.ndarray


class Diagram:
    """Morphism engine over one fixed category"""

    def __init__(self, cat):
        self.cat = cat
        self.n = cat.rank
        self.logger = logging.getLogger("mtc_engine.diagram")
        self._trees: Dict[Tuple[Word, int], List[TreeKey]] = {}
        self._tree_pos: Dict[Tuple[Word, int], Dict[TreeKey, int]] = {}
        self._offsets: Dict[Tuple[Obj, int], List[int]] = {}
        self._splits: Dict[Tuple[Word, Word, int], SplitBasis] = {}
        self._crossings: Dict[Tuple[int, int, bool], Morphism] = {}
        self._braids: Dict[tuple, Morphism] = {}
        self._duality: Dict[Tuple[str, Word], Morphism] = {}

    # Bases

    def trees(self, word, c):
        """Left-nested trees of hom(c, word) as ((e_2, μ_2), ..., (e_n, μ_n))"""
        word = tuple(word)
        key = (word, c)
        cached = self._trees.get(key)
        if cached is not None:
            return cached
        if len(word) == 0:
            result = [()] if c == 0 else []
        elif len(word) == 1:
            result = [()] if word[0] == c else []
        else:
            result = []
            last = word[-1]
            for z in range(self.n):
                mult = self.cat.N[z, last, c]
                if mult == 0:
                    continue
                for prefix in self.trees(word[:-1], z):
                    result.extend(prefix + ((c, mu),) for mu in range(mult))
        self._trees[key] = result
        return result

    def tree_index(self, word, c):
        key = (tuple(word), c)
        pos = self._tree_pos.get(key)
        if pos is None:
            pos = {t: i for i, t in enumerate(self.trees(word, c))}
            self._tree_pos[key] = pos
        return pos

    def offsets(self, obj, c):
        """Start of each summand inside hom(c, obj), plus the total"""
        key = (obj, c)
        cached = self._offsets.get(key)
        if cached is None:
            cached = [0]
            for word in obj.summands:
                cached.append(cached[-1] + len(self.trees(word, c)))
            self._offsets[key] = cached
        return cached

    def dim(self, obj, c):
        return self.offsets(obj, c)[-1]

    def hom_dim(self, a, b):
        return sum(self.dim(a, c) * self.dim(b, c) for c in range(self.n))

    def split(self, wa, wb, c):
        """Change of basis from trees of wa·wb to pairs (tree of wa) ⊗ (tree of wb)"""
        wa, wb = tuple(wa), tuple(wb)
        key = (wa, wb, c)
        cached = self._splits.get(key)
        if cached is not None:
            return cached

        N = self.cat.N
        elements, sectors, position = [], [], {}
        for x in range(self.n):
            ta_list = self.trees(wa, x)
            if not ta_list:
                continue
            for y in range(self.n):
                tb_list = self.trees(wb, y)
                if not tb_list:
                    continue
                for nu in range(N[x, y, c]):
                    sectors.append((x, y, nu, len(elements), len(ta_list), len(tb_list)))
                    for ta in ta_list:
                        for tb in tb_list:
                            position[(x, y, nu, ta, tb)] = len(elements)
                            elements.append((x, y, nu, ta, tb))

        trees = self.trees(wa + wb, c)
        size = len(trees)
        if size != len(elements):
            raise ConsistencyError("fusion-associativity", detail=f"hom({c}, {wa}·{wb}) has inconsistent dimension")

        if not wa or not wb:
            to_split = np.eye(size, dtype=complex)
        elif len(wb) == 1:
            to_split = np.zeros((size, size), dtype=complex)
            for col, tree in enumerate(trees):
                prefix, mu = tree[:-1], tree[-1][1]
                z = wa[0] if len(wa) == 1 else prefix[-1][0]
                to_split[position[(z, wb[0], mu, prefix, ())], col] = 1.0
        else:
            to_split = np.zeros((size, size), dtype=complex)
            head, b = wb[:-1], wb[-1]
            for col, tree in enumerate(trees):
                prefix, mu = tree[:-1], tree[-1][1]
                z = prefix[-1][0]
                previous = self.split(wa, head, z)
                column = previous.to_split[:, self.tree_index(wa + head, z)[prefix]]
                for s in np.flatnonzero(column):
                    x, y_head, nu_head, ta, tb_head = previous.elements[s]
                    move = self.cat.fmove(x, y_head, b, c)
                    row = move.matrix[move.left_pos[(z, nu_head, mu)]]
                    for (y, gamma, delta), coeff in zip(move.right, row):
                        if coeff != 0:
                            target = position[(x, y, delta, ta, tb_head + ((y, gamma),))]
                            to_split[target, col] += column[s] * coeff

        basis = SplitBasis(elements, sectors, position, to_split, np.linalg.inv(to_split) if size else to_split)
        self._splits[key] = basis
        if len(self._splits) % 5000 == 0:
            self.logger.debug(f"split cache holds {len(self._splits)} entries")
        return basis

    # Basic morphisms

    def zero(self, source, target):
        return Morphism(source, target, tuple(
            np.zeros((self.dim(target, c), self.dim(source, c)), dtype=complex) for c in range(self.n)
        ))

    def identity(self, obj):
        return Morphism(obj, obj, tuple(np.eye(self.dim(obj, c), dtype=complex) for c in range(self.n)))

    def compose(self, *morphisms):
        """compose(g, f) = g ∘ f; longer chains read right to left"""
        result = morphisms[-1]
        for m in reversed(morphisms[:-1]):
            result = m @ result
        return result

    def inverse(self, f):
        """Blockwise inverse of an isomorphism"""
        blocks = []
        for c, block in enumerate(f.blocks):
            if block.shape[0] != block.shape[1]:
                raise ShapeMismatch(f"channel {c} block of shape {block.shape} is not invertible")
            blocks.append(np.linalg.inv(block) if block.size else block.copy())
        return Morphism(f.target, f.source, tuple(blocks))

    def is_invertible(self, f, cutoff):
        for block in f.blocks:
            if block.shape[0] != block.shape[1]:
                return False
            if block.size and np.linalg.svd(block, compute_uv=False).min() < cutoff:
                return False
        return True

    def assemble(self, source, target, parts):
        """Morphism with parts[(ti, si)] between target summand ti and source summand si"""
        blocks = [np.zeros((self.dim(target, c), self.dim(source, c)), dtype=complex) for c in range(self.n)]
        for (ti, si), part in parts.items():
            if part.source != source.summand(si) or part.target != target.summand(ti):
                raise ShapeMismatch(f"part ({ti}, {si}) has shape {part.source} -> {part.target}")
            for c in range(self.n):
                t_off, s_off = self.offsets(target, c), self.offsets(source, c)
                blocks[c][t_off[ti]:t_off[ti + 1], s_off[si]:s_off[si + 1]] += part.blocks[c]
        return Morphism(source, target, tuple(blocks))

    def component(self, f, ti, si):
        blocks = []
        for c in range(self.n):
            t_off, s_off = self.offsets(f.target, c), self.offsets(f.source, c)
            blocks.append(f.blocks[c][t_off[ti]:t_off[ti + 1], s_off[si]:s_off[si + 1]])
        return Morphism(f.source.summand(si), f.target.summand(ti), tuple(blocks))

    def inclusion(self, obj, k):
        return self.assemble(obj.summand(k), obj, {(k, 0): self.identity(obj.summand(k))})

    def projection(self, obj, k):
        return self.assemble(obj, obj.summand(k), {(0, k): self.identity(obj.summand(k))})

    def direct_sum(self, morphisms):
        """Block-diagonal sum; summands are concatenated in order"""
        source, target = Obj.zero(), Obj.zero()
        for m in morphisms:
            source, target = source + m.source, target + m.target
        blocks = []
        for c in range(self.n):
            block = np.zeros((self.dim(target, c), self.dim(source, c)), dtype=complex)
            row = col = 0
            for m in morphisms:
                rows, cols = m.blocks[c].shape
                block[row:row + rows, col:col + cols] = m.blocks[c]
                row, col = row + rows, col + cols
            blocks.append(block)
        return Morphism(source, target, tuple(blocks))

    # Tensor product

    def tensor(self, f, g):
        source, target = f.source.tensor(g.source), f.target.tensor(g.target)
        gs, gt = len(g.source), len(g.target)
        blocks = []
        for c in range(self.n):
            s_off, t_off = self.offsets(source, c), self.offsets(target, c)
            block = np.zeros((t_off[-1], s_off[-1]), dtype=complex)
            for i1, wa1 in enumerate(f.source.summands):
                for j1, wb1 in enumerate(g.source.summands):
                    si = i1 * gs + j1
                    if s_off[si] == s_off[si + 1]:
                        continue
                    src = self.split(wa1, wb1, c)
                    for i2, wa2 in enumerate(f.target.summands):
                        for j2, wb2 in enumerate(g.target.summands):
                            ti = i2 * gt + j2
                            if t_off[ti] == t_off[ti + 1]:
                                continue
                            tgt = self.split(wa2, wb2, c)
                            kernel = self._sector_map(f, g, i1, j1, i2, j2, src, tgt)
                            if kernel is not None:
                                block[t_off[ti]:t_off[ti + 1], s_off[si]:s_off[si + 1]] = (
                                    tgt.from_split @ kernel @ src.to_split
                                )
            blocks.append(block)
        return Morphism(source, target, tuple(blocks))

    def _sector_map(self, f, g, i1, j1, i2, j2, src, tgt):
        """f_x ⊗ g_y ⊗ id_ν between split bases"""
        targets = {(x, y, nu): (start, na, nb) for x, y, nu, start, na, nb in tgt.sectors}
        kernel = None
        for x, y, nu, start, na, nb in src.sectors:
            match = targets.get((x, y, nu))
            if match is None:
                continue
            t_start, t_na, t_nb = match
            f_t, f_s = self.offsets(f.target, x), self.offsets(f.source, x)
            g_t, g_s = self.offsets(g.target, y), self.offsets(g.source, y)
            f_sub = f.blocks[x][f_t[i2]:f_t[i2 + 1], f_s[i1]:f_s[i1 + 1]]
            g_sub = g.blocks[y][g_t[j2]:g_t[j2 + 1], g_s[j1]:g_s[j1 + 1]]
            if not f_sub.any() or not g_sub.any():
                continue
            if kernel is None:
                kernel = np.zeros((len(tgt.elements), len(src.elements)), dtype=complex)
            kernel[t_start:t_start + t_na * t_nb, start:start + na * nb] = np.kron(f_sub, g_sub)
        return kernel

    def embed(self, prefix, m, suffix):
        """id_prefix ⊗ m ⊗ id_suffix"""
        result = m
        if prefix:
            result = self.tensor(self.identity(Obj.word(*prefix)), result)
        if suffix:
            result = self.tensor(result, self.identity(Obj.word(*suffix)))
        return result

    def tensor_all(self, morphisms):
        result = morphisms[0]
        for m in morphisms[1:]:
            result = self.tensor(result, m)
        return result

    # Braiding

    def crossing(self, left, right, left_on_top=True):
        """(left, right) -> (right, left); β_{l,r} if the left strand is on top, else β_{r,l}^{-1}"""
        key = (left, right, left_on_top)
        cached = self._crossings.get(key)
        if cached is not None:
            return cached
        blocks = []
        for c in range(self.n):
            if left_on_top:
                blocks.append(self.cat.rsymbol(left, right, c).T)
            else:
                r = self.cat.rsymbol(right, left, c).T
                blocks.append(np.linalg.inv(r) if r.size else r)
        result = Morphism(Obj.word(left, right), Obj.word(right, left), tuple(blocks))
        self._crossings[key] = result
        return result

    def braid_words(self, u, v, tops):
        """u·v -> v·u moving each letter of u to the right

        tops[k] says whether u[k] passes on top; a tuple instead of a bool
        gives one choice per letter of v.
        """
        u, v = tuple(u), tuple(v)
        rows = tuple(
            tuple(bool(x) for x in t) if isinstance(t, (tuple, list)) else (bool(t),) * len(v)
            for t in tops
        )
        key = (u, v, rows)
        cached = self._braids.get(key)
        if cached is not None:
            return cached
        current = list(u + v)
        result = self.identity(Obj.word(*current))
        for idx in reversed(range(len(u))):
            for step in range(len(v)):
                p = idx + step
                cross = self.crossing(current[p], current[p + 1], rows[idx][step])
                result = self.embed(tuple(current[:p]), cross, tuple(current[p + 2:])) @ result
                current[p], current[p + 1] = current[p + 1], current[p]
        self._braids[key] = result
        return result

    def braiding(self, a, b):
        """β_{A,B}: A ⊗ B -> B ⊗ A"""
        return self._braid_objects(a, b, True)

    def braiding_inv(self, a, b):
        """A ⊗ B -> B ⊗ A, the inverse of β_{B,A}"""
        return self._braid_objects(a, b, False)

    def _braid_objects(self, a, b, over):
        parts = {}
        for k, u in enumerate(a.summands):
            for l, v in enumerate(b.summands):
                parts[(l * len(a) + k, k * len(b) + l)] = self.braid_words(u, v, [over] * len(u))
        return self.assemble(a.tensor(b), b.tensor(a), parts)

    # Duality

    def dual_obj(self, obj):
        return obj.dual(self.cat.dual)

    def _simple_cap(self, source, value):
        blocks = [np.zeros((1 if c == 0 else 0, len(self.trees(source, c))), dtype=complex) for c in range(self.n)]
        blocks[0][0, 0] = value
        return Morphism(Obj.word(*source), Obj.unit(), tuple(blocks))

    def _simple_cup(self, target, value):
        blocks = [np.zeros((len(self.trees(target, c)), 1 if c == 0 else 0), dtype=complex) for c in range(self.n)]
        blocks[0][0, 0] = value
        return Morphism(Obj.unit(), Obj.word(*target), tuple(blocks))

    def _word_duality(self, kind, word):
        key = (kind, word)
        cached = self._duality.get(key)
        if cached is not None:
            return cached
        dual = self.cat.dual
        if not word:
            result = self.identity(Obj.unit())
        elif len(word) == 1:
            a = word[0]
            result = {
                "coev": lambda: self._simple_cup((a, dual[a]), 1.0),
                "ev": lambda: self._simple_cap((dual[a], a), self.cat.ev_scalar(a)),
                "ev_tilde": lambda: self._simple_cap((a, dual[a]), self.cat.dims[a]),
                "coev_tilde": lambda: self._simple_cup((dual[a], a), 1.0 / self.cat.pivotal[a]),
            }[kind]()
        else:
            a, rest = word[:1], word[1:]
            rest_dual, a_dual = dual_word(rest, dual), dual_word(a, dual)
            if kind == "coev":
                result = self.embed(a, self._word_duality("coev", rest), a_dual) @ self._word_duality("coev", a)
            elif kind == "ev":
                result = self._word_duality("ev", rest) @ self.embed(rest_dual, self._word_duality("ev", a), rest)
            elif kind == "ev_tilde":
                result = self._word_duality("ev_tilde", a) @ self.embed(a, self._word_duality("ev_tilde", rest), a_dual)
            else:
                result = self.embed(rest_dual, self._word_duality("coev_tilde", a), rest) @ self._word_duality("coev_tilde", rest)
        self._duality[key] = result
        return result

    def coev(self, obj):
        """1 -> A ⊗ A*"""
        n = len(obj)
        target = obj.tensor(self.dual_obj(obj))
        return self.assemble(Obj.unit(), target, {
            (k * n + k, 0): self._word_duality("coev", w) for k, w in enumerate(obj.summands)
        })

    def ev(self, obj):
        """A* ⊗ A -> 1"""
        n = len(obj)
        source = self.dual_obj(obj).tensor(obj)
        return self.assemble(source, Obj.unit(), {
            (0, k * n + k): self._word_duality("ev", w) for k, w in enumerate(obj.summands)
        })

    def ev_tilde(self, obj):
        """A ⊗ A* -> 1"""
        n = len(obj)
        source = obj.tensor(self.dual_obj(obj))
        return self.assemble(source, Obj.unit(), {
            (0, k * n + k): self._word_duality("ev_tilde", w) for k, w in enumerate(obj.summands)
        })

    def coev_tilde(self, obj):
        """1 -> A* ⊗ A"""
        n = len(obj)
        target = self.dual_obj(obj).tensor(obj)
        return self.assemble(Obj.unit(), target, {
            (k * n + k, 0): self._word_duality("coev_tilde", w) for k, w in enumerate(obj.summands)
        })

    # Twist and traces

    def twist(self, obj):
        return Morphism(obj, obj, tuple(
            self.cat.twists[c] * np.eye(self.dim(obj, c), dtype=complex) for c in range(self.n)
        ))

    def trace(self, f):
        """Σ_c d_c tr(f_c)"""
        if not f.is_endomorphism():
            raise NotEndomorphism(f"trace of {f.source} -> {f.target}")
        return complex(sum(self.cat.dims[c] * np.trace(f.blocks[c]) for c in range(self.n)))

    def trace_right(self, f):
        if not f.is_endomorphism():
            raise NotEndomorphism(f"trace of {f.source} -> {f.target}")
        a = f.source
        return (self.ev_tilde(a) @ self.tensor(f, self.identity(self.dual_obj(a))) @ self.coev(a)).scalar()

    def trace_left(self, f):
        if not f.is_endomorphism():
            raise NotEndomorphism(f"trace of {f.source} -> {f.target}")
        a = f.source
        return (self.ev(a) @ self.tensor(self.identity(self.dual_obj(a)), f) @ self.coev_tilde(a)).scalar()

    def partial_trace(self, f, a, b, x, side="right"):
        """Close the x strand of f: A⊗X -> B⊗X (right) or X⊗A -> X⊗B (left)"""
        xd = self.dual_obj(x)
        if side == "right":
            if f.source != a.tensor(x) or f.target != b.tensor(x):
                raise ShapeMismatch("partial_trace: f is not A⊗X -> B⊗X")
            return self.compose(
                self.tensor(self.identity(b), self.ev_tilde(x)),
                self.tensor(f, self.identity(xd)),
                self.tensor(self.identity(a), self.coev(x)),
            )
        if side == "left":
            if f.source != x.tensor(a) or f.target != x.tensor(b):
                raise ShapeMismatch("partial_trace: f is not X⊗A -> X⊗B")
            return self.compose(
                self.tensor(self.ev(x), self.identity(b)),
                self.tensor(self.identity(xd), f),
                self.tensor(self.coev_tilde(x), self.identity(a)),
            )
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")

    def pairing(self, f, g):
        """(f, g) = tr(g ∘ f)"""
        return self.trace(g @ f)

    # Bases of hom spaces

    def hom_basis(self, i, obj):
        """Tree basis of hom(U_i, A)"""
        source = Obj.simple(i)
        basis = []
        for k in range(self.dim(obj, i)):
            m = self.zero(source, obj)
            m.blocks[i][k, 0] = 1.0
            basis.append(m)
        return basis

    def dual_hom_basis(self, i, obj):
        """Trace-dual basis of hom(A, U_i): (b^α, b_β) = δ_{αβ}"""
        return [self.cat.dims[i] ** -1 * m for m in self.composition_dual_basis(i, obj)]

    def composition_dual_basis(self, i, obj):
        """Basis of hom(A, U_i) with b_α ∘ b^β = δ_{αβ} id"""
        target = Obj.simple(i)
        basis = []
        for k in range(self.dim(obj, i)):
            m = self.zero(obj, target)
            m.blocks[i][0, k] = 1.0
            basis.append(m)
        return basis

    def completeness_residual(self, obj):
        """‖Σ_i d_i Σ_α b^α ∘ b_α - id_A‖"""
        total = self.zero(obj, obj)
        for i in range(self.n):
            for up, down in zip(self.hom_basis(i, obj), self.dual_hom_basis(i, obj)):
                total = total + self.cat.dims[i] * (up @ down)
        return total.distance(self.identity(obj))

    # Vectors and random data

    def devectorize(self, vector, source, target):
        blocks, start = [], 0
        for c in range(self.n):
            rows, cols = self.dim(target, c), self.dim(source, c)
            blocks.append(np.asarray(vector[start:start + rows * cols], dtype=complex).reshape(rows, cols))
            start += rows * cols
        if start != len(vector):
            raise ShapeMismatch(f"vector of length {len(vector)} does not fit hom space of dimension {start}")
        return Morphism(source, target, tuple(blocks))

    def random_morphism(self, source, target, rng):
        """Complex Gaussian entries in every block"""
        blocks = []
        for c in range(self.n):
            shape = (self.dim(target, c), self.dim(source, c))
            blocks.append(rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
        return Morphism(source, target, tuple(blocks))

    def rotate_coupon(self, phi, x, y):
        """hom(1, X⊗Y) -> hom(1, Y⊗X): (id_Y ⊗ θ_X) ∘ β_{X,Y} ∘ φ"""
        if not phi.source.is_unit() or phi.target != x.tensor(y):
            raise ShapeMismatch("rotate_coupon expects a coupon 1 -> X⊗Y")
        return self.tensor(self.identity(y), self.twist(x)) @ self.braiding(x, y) @ phi
