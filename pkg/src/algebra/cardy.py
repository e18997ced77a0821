"""Cardy algebras (H_cl, H_op, ι)
Conditions I-IV, targeted corruptions and the isomorphism search
"""

import logging
from dataclasses import dataclass, replace

import numpy as np
from scipy.linalg import lstsq, null_space
from scipy.optimize import least_squares

from config.settings import rank_cutoff
from src.algebra.frobenius import (
    FrobeniusAlgebra,
    block_embedding,
    conjugate,
    direct_sum,
    endomorphism_frobenius,
    frobenius_adjoint,
    transport_L,
    trivial_algebra,
    verify_frobenius,
)
from src.center.center import center_embed
from src.diagram.morphism import Morphism
from src.errors import ShapeMismatch
from src.mtc_core.axioms import AxiomCheck

logger = logging.getLogger("mtc_engine.cardy")

CONDITIONS = ("I", "II", "III", "IV")


@dataclass(frozen=True, eq=False)
class CardyAlgebra:
    """Closed algebra in Z(C), open algebra in C and ι: H_cl -> L(H_op)"""
    name: str
    h_cl: FrobeniusAlgebra
    h_op: FrobeniusAlgebra
    iota: Morphism

    def __post_init__(self):
        if self.h_cl.center is None:
            raise ShapeMismatch(f"{self.name}: the closed algebra must live in Z(C)")
        if self.iota.source != self.h_cl.carrier:
            raise ShapeMismatch(f"{self.name}: ι does not start at H_cl")


@dataclass(frozen=True, eq=False)
class CardyMorphism:
    """f_cl: H_cl -> H_cl', f_op: H_op -> H_op' with L(f_op) ∘ ι = ι' ∘ f_cl"""
    f_cl: Morphism
    f_op: Morphism
    square_residual: float
    homomorphism_residual: float


@dataclass(frozen=True)
class NotIsomorphic:
    reason: str

    def __bool__(self):
        return False


def canonical_cardy(lf):
    """H_op = 1, H_cl = L(1) with the transported structure, ι = id"""
    h_op = trivial_algebra(lf.d)
    h_cl = transport_L(lf, h_op, commutative=True)
    return CardyAlgebra("canonical", h_cl, h_op, lf.d.identity(h_cl.carrier))


def transported_open(lf, cd):
    return transport_L(lf, cd.h_op)


def iota_dagger(lf, cd):
    return frobenius_adjoint(lf.d, cd.iota, cd.h_cl, transported_open(lf, cd))


def left_centre_idempotent(lf, alg):
    """(ε⊗id)(m⊗id)(id⊗β_{A,A})(Δ⊗id)(η⊗id) with the Z(C)-braiding"""
    d = lf.d
    ida = d.identity(alg.carrier)
    beta = lf.center.braiding(alg.center, alg.center)
    return d.compose(
        d.tensor(alg.eps, ida),
        d.tensor(alg.m, ida),
        d.tensor(ida, beta),
        d.tensor(alg.delta, ida),
        d.tensor(alg.eta, ida),
    )


def closed_multiplicities(lf, h_cl):
    """Z_{ij} = Σ_α (b_α, b^α) / (d_i d_j) over hom_Z((i,j), H_cl)"""
    n = lf.n
    z = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            z[i, j] = lf.center.multiplicity(i, j, h_cl)
    return z


def modular_invariance_residual(lf, z):
    """max(‖SZ - ZS‖, ‖TZ - ZT‖)"""
    cat = lf.cat
    s = cat.s_matrix
    t = np.diag(cat.twists)
    return float(max(np.max(np.abs(s @ z - z @ s)), np.max(np.abs(t @ z - z @ t))))


def modularity_sides(lf, alg, i, j):
    """Both sides of the modularity equation on A ⊗ (i,j)

    lhs = d_i d_j / D² · (m ⊗ id_X)(id_A ⊗ β_{X,A} β_{A,X})(Δ ⊗ id_X)
    rhs = Σ_α (id_A ⊗ c^α) Δ m (id_A ⊗ b_α) over b_α ∈ hom_Z(X, A)
    """
    d, center = lf.d, lf.center
    x, a = center_embed(i, j), alg.center
    ida, idx = d.identity(a.carrier), d.identity(x.carrier)
    monodromy = center.braiding(x, a) @ center.braiding(a, x)
    scale = lf.cat.dims[i] * lf.cat.dims[j] / lf.cat.global_dim_sq
    lhs = scale * d.compose(d.tensor(alg.m, idx), d.tensor(ida, monodromy), d.tensor(alg.delta, idx))
    rhs = d.zero(a.carrier.tensor(x.carrier), a.carrier.tensor(x.carrier))
    basis = center.hom_z(x, a)
    for b, c in zip(basis, center.dual_basis(basis, x, a)):
        rhs = rhs + d.compose(d.tensor(ida, c), alg.delta, alg.m, d.tensor(ida, b))
    return lhs, rhs


def condition_I(lf, cd, tol):
    """Unit laws, θ = id and the modularity equation for every simple (i,j)"""
    d, alg = lf.d, cd.h_cl
    x = alg.center
    ida = d.identity(x.carrier)
    twist = lf.center.twist(x).distance(ida)
    unit = max(
        (alg.m @ d.tensor(alg.eta, ida)).distance(ida),
        (alg.m @ d.tensor(ida, alg.eta)).distance(ida),
    )
    worst, where = 0.0, None
    for i in range(lf.n):
        for j in range(lf.n):
            lhs, rhs = modularity_sides(lf, alg, i, j)
            gap = lhs.distance(rhs)
            if gap >= worst:
                worst, where = gap, (i, j)
    z = closed_multiplicities(lf, x)
    invariance = modular_invariance_residual(lf, z)
    residual = max(twist, unit, worst, invariance)
    detail = (
        f"θ {twist:.3e}, unit {unit:.3e}, modularity {worst:.3e} at {where}, "
        f"[S,Z]/[T,Z] {invariance:.3e}, Z = {np.round(z, 6).tolist()}"
    )
    return AxiomCheck("I modularity", residual, residual < tol, detail)


def condition_II(lf, cd, lifted, tol):
    d = lf.d
    iota = cd.iota
    mult = (iota @ cd.h_cl.m).distance(lifted.m @ d.tensor(iota, iota))
    unit = (iota @ cd.h_cl.eta).distance(lifted.eta)
    central = lf.center.centrality_residual(iota, cd.h_cl.center, lifted.center)
    residual = max(mult, unit, central)
    detail = f"multiplicativity {mult:.3e}, unit {unit:.3e}, centrality {central:.3e}"
    return AxiomCheck("II algebra map", residual, residual < tol, detail)


def iota_mate(lf, cd):
    """H_cl -> H_op as the adjunction counit after ι"""
    return lf.counit(cd.h_op.carrier) @ cd.iota


def condition_III(lf, cd, tol):
    """m_op ∘ (ι̂ ⊗ id) = m_op ∘ (id ⊗ ι̂) ∘ β_{H_cl, H_op}"""
    d = lf.d
    mate = iota_mate(lf, cd)
    idop = d.identity(cd.h_op.carrier)
    beta = lf.center.half_braiding(cd.h_cl.center, cd.h_op.carrier)
    lhs = cd.h_op.m @ d.tensor(mate, idop)
    rhs = cd.h_op.m @ d.tensor(idop, mate) @ beta
    residual = lhs.distance(rhs)
    return AxiomCheck("III center", residual, residual < tol, f"residual {residual:.3e}")


def condition_IV(lf, cd, lifted, tol):
    """ι ∘ ι† = Π"""
    dagger = frobenius_adjoint(lf.d, cd.iota, cd.h_cl, lifted)
    residual = (cd.iota @ dagger).distance(left_centre_idempotent(lf, lifted))
    return AxiomCheck("IV cardy", residual, residual < tol, f"residual {residual:.3e}")


def verify_cardy(lf, cd, tol=None):
    """Residuals of conditions I-IV"""
    tol = lf.cat.tol if tol is None else tol
    lifted = transported_open(lf, cd)
    if cd.iota.target != lifted.carrier:
        raise ShapeMismatch(f"{cd.name}: ι does not land in L(H_op)")
    checks = [
        condition_I(lf, cd, tol),
        condition_II(lf, cd, lifted, tol),
        condition_III(lf, cd, tol),
        condition_IV(lf, cd, lifted, tol),
    ]
    for check in checks:
        if not check.passed:
            logger.info(f"{cd.name}: condition {check.name} fails ({check.detail})")
    return checks


def verify_components(lf, cd, tol=None):
    return verify_frobenius(lf, cd.h_cl, tol) + verify_frobenius(lf, cd.h_op, tol)


# Negative controls

def _summand_sign(lf, x, k):
    """Identity on X with summand k negated"""
    d = lf.d
    parts = {}
    for s in range(len(x)):
        piece = d.identity(x.carrier.summand(s))
        parts[(s, s)] = -1 * piece if s == k else piece
    return d.assemble(x.carrier, x.carrier, parts)


def off_channel_entry(lf, f, value):
    """f plus value at the first empty entry joining two different summands"""
    d = lf.d
    blocks = [b.copy() for b in f.blocks]
    for c, block in enumerate(blocks):
        t_off, s_off = d.offsets(f.target, c), d.offsets(f.source, c)
        row_owner = np.searchsorted(t_off, np.arange(block.shape[0]), side="right") - 1
        col_owner = np.searchsorted(s_off, np.arange(block.shape[1]), side="right") - 1
        for row in range(block.shape[0]):
            for col in range(block.shape[1]):
                if row_owner[row] != col_owner[col] and block[row, col] == 0:
                    block[row, col] = value
                    return Morphism(f.source, f.target, tuple(blocks))
    raise ShapeMismatch("no off-channel entry available")


def corrupt_cardy(lf, cd, kind, **params):
    """Targeted corruption of a Cardy algebra

    scale-iota: ι -> factor·ι (breaks II and IV)
    added-vacuum: H_cl -> H_cl ⊕ 1, ι -> ι on the first block (breaks I)
    sign-flip: ι -> ι ∘ (sign on the last summand of H_cl) (breaks II)
    endomorphism-open: H_op -> End(X), ι -> L(η_End) (breaks III and IV)
    rescale-coproduct: Δ_op -> factor·Δ_op, ε_op -> ε_op/factor (breaks IV)
    off-channel: ι plus a single entry between different summands
    """
    d = lf.d
    name = f"{cd.name} [{kind}]"
    if kind == "scale-iota":
        return replace(cd, name=name, iota=cd.iota * params.get("factor", 2.0))
    if kind == "added-vacuum":
        h_cl = direct_sum(d, cd.h_cl, trivial_algebra(d, in_center=True))
        _, first = block_embedding(d, cd.h_cl.carrier, h_cl.carrier)
        return CardyAlgebra(name, h_cl, cd.h_op, cd.iota @ first)
    if kind == "sign-flip":
        x = cd.h_cl.center
        return replace(cd, name=name, iota=cd.iota @ _summand_sign(lf, x, len(x) - 1))
    if kind == "endomorphism-open":
        h_op = endomorphism_frobenius(d, params["object"])
        h_cl = transport_L(lf, trivial_algebra(d), commutative=True)
        return CardyAlgebra(name, h_cl, h_op, lf.mor(h_op.eta))
    if kind == "rescale-coproduct":
        factor = params.get("factor", 2.0)
        h_op = replace(cd.h_op, delta=cd.h_op.delta * factor, eps=cd.h_op.eps * (1.0 / factor))
        return replace(cd, name=name, h_op=h_op)
    if kind == "off-channel":
        return replace(cd, name=name, iota=off_channel_entry(lf, cd.iota, params.get("value", 0.1)))
    raise ValueError(f"unknown corruption '{kind}'")


def gauge_cardy(lf, cd, rng):
    """Conjugate by a random central automorphism of H_cl and a random automorphism of H_op's carrier"""
    d = lf.d
    basis = lf.center.hom_z(cd.h_cl.center, cd.h_cl.center)
    g_cl = d.zero(cd.h_cl.carrier, cd.h_cl.carrier)
    for b in basis:
        g_cl = g_cl + complex(rng.standard_normal() + 1j * rng.standard_normal()) * b
    g_op = d.random_morphism(cd.h_op.carrier, cd.h_op.carrier, rng)
    g_cl_inv, g_op_inv = d.inverse(g_cl), d.inverse(g_op)
    h_cl = conjugate(d, cd.h_cl, g_cl, g_cl_inv, center=cd.h_cl.center)
    h_op = conjugate(d, cd.h_op, g_op, g_op_inv)
    iota = lf.mor(g_op) @ cd.iota @ g_cl_inv
    return CardyAlgebra(f"{cd.name} (gauged)", h_cl, h_op, iota)


# Isomorphism search

def _linear_columns(apply, size, source, target, d):
    columns = []
    for t in range(size):
        unit = np.zeros(size, dtype=complex)
        unit[t] = 1.0
        columns.append(apply(d.devectorize(unit, source, target)).vector())
    return np.array(columns).reshape(size, -1).T


def _dimension_profile(d, obj):
    return tuple(d.dim(obj, c) for c in range(d.n))


def cardy_isomorphic(lf, first, second, rng=None, tol=None):
    """Search a Cardy algebra isomorphism first -> second"""
    d = lf.d
    tol = lf.cat.tol if tol is None else tol
    rng = np.random.default_rng(0) if rng is None else rng
    cl1, cl2, op1, op2 = first.h_cl, second.h_cl, first.h_op, second.h_op

    if _dimension_profile(d, cl1.carrier) != _dimension_profile(d, cl2.carrier):
        return NotIsomorphic("closed carriers have different channel dimensions")
    if _dimension_profile(d, op1.carrier) != _dimension_profile(d, op2.carrier):
        return NotIsomorphic("open carriers have different channel dimensions")

    n_cl = d.hom_dim(cl1.carrier, cl2.carrier)
    n_op = d.hom_dim(op1.carrier, op2.carrier)

    def split(v):
        return d.devectorize(v[:n_cl], cl1.carrier, cl2.carrier), d.devectorize(v[n_cl:], op1.carrier, op2.carrier)

    def zeros(rows, cols):
        return np.zeros((rows, cols), dtype=complex)

    # affine constraints A v = b
    blocks, rhs = [], []
    central = lf.center.centrality_matrix(cl1.center, cl2.center)
    blocks.append(np.hstack([central, zeros(central.shape[0], n_op)]))
    rhs.append(np.zeros(central.shape[0], dtype=complex))
    for alg1, alg2, size, offset, source, target in (
        (cl1, cl2, n_cl, 0, cl1.carrier, cl2.carrier),
        (op1, op2, n_op, n_cl, op1.carrier, op2.carrier),
    ):
        unit = _linear_columns(lambda f: f @ alg1.eta, size, source, target, d)
        counit = _linear_columns(lambda f: alg2.eps @ f, size, source, target, d)
        for matrix, value in ((unit, alg2.eta.vector()), (counit, alg1.eps.vector())):
            row = zeros(matrix.shape[0], n_cl + n_op)
            row[:, offset:offset + size] = matrix
            blocks.append(row)
            rhs.append(value)
    square_cl = _linear_columns(lambda f: -1 * (second.iota @ f), n_cl, cl1.carrier, cl2.carrier, d)
    square_op = _linear_columns(lambda f: lf.mor(f) @ first.iota, n_op, op1.carrier, op2.carrier, d)
    blocks.append(np.hstack([square_cl, square_op]))
    rhs.append(np.zeros(square_cl.shape[0], dtype=complex))

    a_matrix, b_vector = np.vstack(blocks), np.concatenate(rhs)
    particular = lstsq(a_matrix, b_vector)[0]
    if np.max(np.abs(a_matrix @ particular - b_vector), initial=0.0) > rank_cutoff(tol):
        return NotIsomorphic("unit, counit, centrality and ι-square constraints are inconsistent")
    kernel = null_space(a_matrix, rcond=rank_cutoff(tol))

    def quadratic(v):
        f_cl, f_op = split(v)
        parts = []
        for f, a1, a2 in ((f_cl, cl1, cl2), (f_op, op1, op2)):
            parts.append((f @ a1.m - a2.m @ d.tensor(f, f)).vector())
            parts.append((d.tensor(f, f) @ a1.delta - a2.delta @ f).vector())
        return np.concatenate(parts)

    def candidate_ok(v):
        f_cl, f_op = split(v)
        hom = float(np.max(np.abs(quadratic(v)), initial=0.0))
        cutoff = rank_cutoff(tol)
        return hom, d.is_invertible(f_cl, cutoff) and d.is_invertible(f_op, cutoff)

    candidates = [particular]
    if kernel.shape[1]:
        def residuals(x):
            coeffs = x[:kernel.shape[1]] + 1j * x[kernel.shape[1]:]
            r = quadratic(particular + kernel @ coeffs)
            return np.concatenate([r.real, r.imag])

        starts = [np.zeros(2 * kernel.shape[1])] + [rng.standard_normal(2 * kernel.shape[1]) for _ in range(3)]
        for start in starts:
            fit = least_squares(residuals, start, xtol=1e-15, ftol=1e-15, gtol=1e-15)
            coeffs = fit.x[:kernel.shape[1]] + 1j * fit.x[kernel.shape[1]:]
            candidates.append(particular + kernel @ coeffs)

    best = None
    for v in candidates:
        hom, invertible = candidate_ok(v)
        if invertible and hom < max(tol, 1e3 * np.finfo(float).eps):
            f_cl, f_op = split(v)
            square = (lf.mor(f_op) @ first.iota).distance(second.iota @ f_cl)
            logger.debug(f"isomorphism found: homomorphism residual {hom:.3e}, square residual {square:.3e}")
            return CardyMorphism(f_cl, f_op, square, hom)
        if best is None or hom < best:
            best = hom
    return NotIsomorphic(f"no invertible Frobenius homomorphism pair found (best residual {best:.3e})")
