# -*- coding: utf-8 -*-
# Copyright 2026 The otcsim Authors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
Dense complex tensor algebra over multi-qudit layouts.

Composite basis indices are mixed-radix with factor 0 as the most significant digit. Matrices are plain
complex128 numpy arrays; functions never modify their arguments.
"""

import collections
import functools
import logging
import operator
import string

import numpy as np

from scipy.stats import unitary_group

from otcsim.errors import DimensionLimitError, LayoutError, NotHermitianError, NotUnitaryError


DEFAULT_DIMENSION_LIMIT = 4096
HERMITIAN_TOLERANCE = 1e-12
UNITARY_TOLERANCE = 1e-10

# einsum subscripts use one letter per row and per column factor
MAX_FACTORS = len(string.ascii_letters) // 2

_dimension_limit = DEFAULT_DIMENSION_LIMIT


def set_dimension_limit(limit):
    global _dimension_limit
    limit = int(limit)
    if limit < 2:
        raise ValueError('The dimension limit must be at least 2, got {}'.format(limit))
    logging.debug('Composite dimension limit set to {}'.format(limit))
    _dimension_limit = limit


def dimension_limit():
    return _dimension_limit


def check_dimension(side):
    if side > _dimension_limit:
        raise DimensionLimitError('Composite dimension {} exceeds the configured limit of {}'.format(
            side, _dimension_limit))
    return side


class SubsystemLayout(collections.namedtuple('SubsystemLayout', ['dims'])):
    __slots__ = ()

    def __new__(cls, dims):
        dims = tuple(int(d) for d in dims)
        if not dims:
            raise LayoutError('A layout needs at least one factor')
        if any(d < 2 for d in dims):
            raise LayoutError('Every local dimension must be at least 2, got {}'.format(dims))
        if len(dims) > MAX_FACTORS:
            raise LayoutError('At most {} factors are supported, got {}'.format(MAX_FACTORS, len(dims)))
        return super().__new__(cls, dims)

    @classmethod
    def uniform(cls, d, count):
        return cls((d,) * count)

    @property
    def num_factors(self):
        return len(self.dims)

    @property
    def size(self):
        return functools.reduce(operator.mul, self.dims, 1)

    def permuted(self, perm):
        return SubsystemLayout(self.dims[p] for p in perm)

    def subset(self, indices):
        return SubsystemLayout(self.dims[i] for i in sorted(indices))

    def concat(self, other):
        return SubsystemLayout(self.dims + other.dims)


def as_matrix(m):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise LayoutError('Expected a matrix, got an array of shape {}'.format(m.shape))
    return m


def _check_square(m):
    if m.shape[0] != m.shape[1]:
        raise LayoutError('Expected a square matrix, got shape {}'.format(m.shape))


def check_layout(m, layout):
    if m.shape != (layout.size, layout.size):
        raise LayoutError('Matrix of shape {} does not match layout {} (side {})'.format(
            m.shape, list(layout.dims), layout.size))


def factor_indices(layout, indices):
    """
    Validates an index set against a layout.

    :return: the sorted, de-duplicated factor indices
    """
    normalized = sorted(set(int(i) for i in indices))
    for i in normalized:
        if not 0 <= i < layout.num_factors:
            raise LayoutError('Factor index {} is out of range for a {}-factor layout'.format(
                i, layout.num_factors))
    return normalized


def check_permutation(layout, perm):
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(layout.num_factors)):
        raise LayoutError('{} is not a permutation of the {} factors of the layout'.format(
            perm, layout.num_factors))
    return perm


def inverse_permutation(perm):
    return [int(p) for p in np.argsort(perm)]


def tensor_product(a, b):
    a = as_matrix(a)
    b = as_matrix(b)
    check_dimension(max(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]))
    return np.kron(a, b)


def tensor_all(matrices):
    return functools.reduce(tensor_product, matrices)


def partial_trace(m, layout, keep):
    """
    Traces out every factor not listed in `keep`. Kept factors stay in their original relative order.
    An empty `keep` returns the 1x1 matrix holding the trace.
    """
    m = as_matrix(m)
    check_layout(m, layout)
    keep = factor_indices(layout, keep)
    n = layout.num_factors
    if len(keep) == n:
        return m.copy()

    rows = string.ascii_letters[:n]
    cols = list(string.ascii_letters[n:2 * n])
    for i in range(n):
        if i not in keep:
            cols[i] = rows[i]
    subscripts = '{}{}->{}{}'.format(rows, ''.join(cols),
                                     ''.join(rows[i] for i in keep),
                                     ''.join(cols[i] for i in keep))
    reduced = np.einsum(subscripts, m.reshape(layout.dims + layout.dims))
    side = functools.reduce(operator.mul, (layout.dims[i] for i in keep), 1)
    return reduced.reshape(side, side)


def permute_subsystems(m, layout, perm):
    """
    Relabels the factors of a composite: factor k of the result is factor perm[k] of the input.
    The result is described by layout.permuted(perm).
    """
    m = as_matrix(m)
    check_layout(m, layout)
    perm = check_permutation(layout, perm)
    n = layout.num_factors
    tensor = m.reshape(layout.dims + layout.dims).transpose(perm + [p + n for p in perm])
    return np.array(tensor.reshape(m.shape))


def permutation_operator(layout, perm):
    """
    The unitary P such that P m P^dagger == permute_subsystems(m, layout, perm).
    """
    perm = check_permutation(layout, perm)
    side = check_dimension(layout.size)
    n = layout.num_factors
    identity = np.eye(side, dtype=complex).reshape(layout.dims + layout.dims)
    return np.array(identity.transpose(perm + list(range(n, 2 * n))).reshape(side, side))


def hermiticity_error(m):
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def is_hermitian(m, tolerance=HERMITIAN_TOLERANCE):
    m = as_matrix(m)
    return m.shape[0] == m.shape[1] and hermiticity_error(m) <= tolerance


def check_hermitian(m, tolerance=HERMITIAN_TOLERANCE):
    _check_square(m)
    error = hermiticity_error(m)
    if error > tolerance:
        raise NotHermitianError('Matrix deviates from Hermiticity by {:.3e} (tolerance {:.0e})'.format(
            error, tolerance))


def unitarity_error(u):
    return float(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))))


def check_unitary(u, tolerance=UNITARY_TOLERANCE):
    _check_square(u)
    error = unitarity_error(u)
    if error > tolerance:
        raise NotUnitaryError('Matrix deviates from unitarity by {:.3e} (tolerance {:.0e})'.format(
            error, tolerance))


def eig_hermitian(m):
    """
    :return: (eigenvalues in ascending order, matrix whose columns are the matching eigenvectors)
    """
    m = as_matrix(m)
    check_hermitian(m)
    return np.linalg.eigh(m)


def conjugate_by(u, rho):
    u = as_matrix(u)
    rho = as_matrix(rho)
    if u.shape[1] != rho.shape[0] or rho.shape[0] != rho.shape[1]:
        raise LayoutError('Cannot conjugate a {} matrix by a {} operator'.format(rho.shape, u.shape))
    check_unitary(u)
    return u @ rho @ u.conj().T


def trace_norm(m):
    return float(np.linalg.norm(as_matrix(m), 'nuc'))


def psd_sqrt(m):
    values, vectors = np.linalg.eigh(as_matrix(m))
    return (vectors * np.sqrt(np.clip(values, 0.0, None))) @ vectors.conj().T


def random_unitary(d, seed):
    """Haar-random d x d unitary."""
    return np.asarray(unitary_group.rvs(d, random_state=seed), dtype=complex)


def random_hermitian(d, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return (a + a.conj().T) / 2


def apply_local(m, layout, gate, factors):
    """
    Conjugates `m` by `gate` acting on the listed factors (identity elsewhere) without building the
    full-size operator. The order of `factors` matches the factor order of `gate`.
    """
    m = as_matrix(m)
    check_layout(m, layout)
    gate = as_matrix(gate)
    factors = [int(f) for f in factors]
    if len(set(factors)) != len(factors):
        raise LayoutError('Repeated factor indices {}'.format(factors))
    factor_indices(layout, factors)
    sub_dims = tuple(layout.dims[f] for f in factors)
    sub = functools.reduce(operator.mul, sub_dims, 1)
    if gate.shape != (sub, sub):
        raise LayoutError('Gate of shape {} does not act on factors {} of dims {}'.format(
            gate.shape, factors, list(sub_dims)))
    check_unitary(gate)

    n = layout.num_factors
    k = len(factors)
    g = gate.reshape(sub_dims + sub_dims)
    tensor = m.reshape(layout.dims + layout.dims)
    tensor = np.tensordot(g, tensor, axes=(list(range(k, 2 * k)), factors))
    tensor = np.moveaxis(tensor, list(range(k)), factors)
    columns = [n + f for f in factors]
    tensor = np.tensordot(tensor, g.conj(), axes=(columns, list(range(k, 2 * k))))
    tensor = np.moveaxis(tensor, list(range(2 * n - k, 2 * n)), columns)
    return np.array(tensor.reshape(m.shape))
