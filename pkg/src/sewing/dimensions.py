"""Dimensions of string-net spaces
dim hom_Z(1, A_1⊗…⊗A_n⊗L^g) by fusion-ring arithmetic in K_0(C ⊠ C̄), and by tree counting
"""

import itertools
import logging

import numpy as np


logger = logging.getLogger("mtc_engine.dimensions")


def fuse_word(cat, word):
    """Class of U_{x_1}⊗…⊗U_{x_n} in K_0(C) as a multiplicity vector"""
    vector = np.zeros(cat.rank, dtype=np.int64)
    vector[0] = 1
    for x in word:
        vector = np.einsum("i,ik->k", vector, cat.N[:, x, :]).astype(np.int64)
    return vector


def center_class(cat, x):
    """Multiplicity matrix M[i, j] of U_i ⊠ U_j in X; over letters fuse in C, under letters in C̄"""
    total = np.zeros((cat.rank, cat.rank), dtype=np.int64)
    for k in range(len(x)):
        over, under = x.over_under(k)
        total += np.outer(fuse_word(cat, over), fuse_word(cat, under))
    return total


def class_product(cat, first, second):
    """(A⊠B)(A'⊠B') = AA' ⊠ BB' on multiplicity matrices"""
    n = cat.N.astype(np.int64)
    return np.einsum("ij,ab,iak,jbl->kl", first, second, n, n)


def handle_class(cat):
    """⊕_{(i,j)} (i,j) ⊗ (i,j)*; each factor contributes Σ_i U_i U_i*"""
    h = sum(cat.N[i, cat.dual[i], :].astype(np.int64) for i in range(cat.rank))
    return np.outer(h, h)


def stringnet_dim(cat, genus, boundary):
    """Coefficient of the unit (0, 0) in the product of the boundary classes and genus handles

    A boundary circle labelled by L(1) counts hom_Z(1, L(1)), which is one-dimensional,
    so a sphere with one L(1) boundary gives 1 rather than the number of summands.
    """
    if genus < 0:
        raise ValueError(f"genus must be non-negative, got {genus}")
    total = np.zeros((cat.rank, cat.rank), dtype=np.int64)
    total[0, 0] = 1
    for x in boundary:
        total = class_product(cat, total, center_class(cat, x))
    handle = handle_class(cat)
    for _ in range(genus):
        total = class_product(cat, total, handle)
    result = int(total[0, 0])
    logger.debug(f"string-net dimension: genus {genus}, {len(boundary)} boundary circles -> {result}")
    return result


def stringnet_dim_bruteforce(d, genus, boundary):
    """Sum over boundary summands and handle labels of the number of fusion trees 1 -> over ⊠ under"""
    cat = d.cat
    dual = cat.dual
    choices = [range(len(x)) for x in boundary]
    handles = list(itertools.product(range(cat.rank), repeat=2))
    total = 0
    for picks in itertools.product(*choices):
        over, under = (), ()
        for x, k in zip(boundary, picks):
            o, u = x.over_under(k)
            over, under = over + o, under + u
        for labels in itertools.product(handles, repeat=genus):
            handle_over = tuple(y for i, _ in labels for y in (i, dual[i]))
            handle_under = tuple(y for _, j in labels for y in (j, dual[j]))
            total += len(d.trees(over + handle_over, 0)) * len(d.trees(under + handle_under, 0))
    return total
