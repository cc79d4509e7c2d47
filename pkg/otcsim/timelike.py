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
Non-linear timelike channels.

A Deutsch CTC couples the chronology-respecting state to a CTC rail through a unitary and demands that
the rail state reproduce itself. An OTC is the interaction-free special case and acts on a state as the
universal decorrelator rho_AB -> rho_A (x) rho_B.
"""

import collections
import logging

import numpy as np

from scipy.linalg import null_space, orth
from scipy.optimize import minimize

import otcsim.qmath as qmath

from otcsim.errors import ConsistencyError, ConvergenceError, DimensionLimitError, LayoutError
from otcsim.gates import embed, swap
from otcsim.qstate import DensityMatrix, density_from_pure
from otcsim.qmath import SubsystemLayout


DEFAULT_TOLERANCE = 1e-10
DEFAULT_MAX_ITERATIONS = 100000
DEFAULT_STALL_WINDOW = 100
SPECTRAL_MAX_DIMENSION = 32
CONSISTENCY_SLACK = 1e-12

SOLVER_METHODS = ('auto', 'power_iteration', 'spectral_exact')
FIXED_POINT_METHODS = ('power_iteration', 'cesaro_average', 'spectral_exact')

POLISH_STEPS = 200


class CtcSpec(collections.namedtuple('CtcSpec', ['interaction', 'ctc_indices', 'ctc_dims'])):
    """
    `interaction` acts on the joint layout in which the CTC factors sit at `ctc_indices` and the factors of
    the chronology-respecting input fill the remaining positions in order. `ctc_dims` gives the local
    dimensions of the CTC factors; when omitted they are inferred from the size of the interaction.
    """
    __slots__ = ()

    def __new__(cls, interaction, ctc_indices, ctc_dims=None):
        interaction = qmath.as_matrix(interaction)
        qmath.check_unitary(interaction)
        interaction.setflags(write=False)
        ctc_indices = tuple(sorted(set(int(i) for i in ctc_indices)))
        if not ctc_indices:
            raise LayoutError('A CTC needs at least one factor')
        if ctc_dims is not None:
            ctc_dims = tuple(int(d) for d in ctc_dims)
            if len(ctc_dims) != len(ctc_indices):
                raise LayoutError('{} CTC dims given for {} CTC factors'.format(len(ctc_dims), len(ctc_indices)))
        return super().__new__(cls, interaction, ctc_indices, ctc_dims)


FixedPointReport = collections.namedtuple(
    'FixedPointReport', ['solution', 'residual', 'iterations', 'method', 'tolerance', 'fixed_space_dimension'])


class _CtcGeometry(object):
    """Resolved joint layout of an input state and a CtcSpec, with the map sigma -> M(sigma) on raw arrays."""

    def __init__(self, rho_in, spec):
        side = spec.interaction.shape[0]
        if side % rho_in.dim != 0:
            raise LayoutError('Interaction of side {} cannot act on an input of dimension {} and a CTC'.format(
                side, rho_in.dim))
        ctc_side = side // rho_in.dim
        k = len(spec.ctc_indices)
        ctc_dims = spec.ctc_dims
        if ctc_dims is None:
            local = int(round(ctc_side ** (1.0 / k)))
            if local ** k != ctc_side:
                raise LayoutError('Cannot split a CTC of dimension {} into {} equal factors; give ctc_dims'.format(
                    ctc_side, k))
            ctc_dims = (local,) * k
        ctc_layout = SubsystemLayout(ctc_dims)
        if ctc_layout.size != ctc_side:
            raise LayoutError('CTC dims {} do not match interaction side {} for an input of dimension {}'.format(
                list(ctc_dims), side, rho_in.dim))

        n = rho_in.layout.num_factors
        total = n + k
        if spec.ctc_indices[-1] >= total:
            raise LayoutError('CTC index {} is out of range for a {}-factor joint layout'.format(
                spec.ctc_indices[-1], total))
        qmath.check_dimension(side)

        chronology = iter(range(n))
        self.perm = [n + spec.ctc_indices.index(j) if j in spec.ctc_indices else next(chronology)
                     for j in range(total)]
        self.product_layout = rho_in.layout.concat(ctc_layout)
        self.joint = self.product_layout.permuted(self.perm)
        self.ctc_keep = list(spec.ctc_indices)
        self.cr_keep = [j for j in range(total) if j not in spec.ctc_indices]
        self.ctc_layout = ctc_layout
        self._rho_in = rho_in.matrix
        self._u = spec.interaction
        self._u_dagger = spec.interaction.conj().T

    def evolved(self, sigma):
        joint = qmath.permute_subsystems(np.kron(self._rho_in, sigma), self.product_layout, self.perm)
        return self._u @ joint @ self._u_dagger

    def apply(self, sigma):
        return qmath.partial_trace(self.evolved(sigma), self.joint, self.ctc_keep)


def _residual(geometry, sigma):
    return qmath.trace_norm(geometry.apply(sigma) - sigma)


def _report(matrix, geometry, residual, iterations, method, tol, fixed_space_dimension=None):
    return FixedPointReport(DensityMatrix(matrix, geometry.ctc_layout), residual, iterations, method, tol,
                            fixed_space_dimension)


def _power_iteration(geometry, sigma, tol, max_iter, stall_window):
    best_residual, since_improvement = np.inf, 0
    cesaro, running_sum, averaged = False, None, 0
    for iteration in range(1, max_iter + 1):
        image = geometry.apply(sigma)
        if not cesaro:
            residual = qmath.trace_norm(image - sigma)
            if residual <= tol:
                return sigma, residual, iteration, 'power_iteration', best_residual
            if residual < best_residual:
                best_residual, since_improvement = residual, 0
            else:
                since_improvement += 1
            if since_improvement >= stall_window:
                logging.debug('Residual stalled at {:.3e} after {} iterations, switching to Cesaro averaging'.format(
                    best_residual, iteration))
                cesaro, running_sum, averaged = True, np.zeros_like(sigma), 0
        else:
            running_sum = running_sum + sigma
            averaged += 1
            mean = running_sum / averaged
            residual = _residual(geometry, mean)
            if residual <= tol:
                return mean, residual, iteration, 'cesaro_average', best_residual
            best_residual = min(best_residual, residual)
        sigma = image
    return None, None, max_iter, None, best_residual


def _hermitian_basis(kernel, d):
    """Real orthonormal coordinates of Hermitian matrices spanning the same space as the kernel columns."""
    candidates = []
    for column in kernel.T:
        x = column.reshape(d, d)
        for h in ((x + x.conj().T) / 2, (x - x.conj().T) / 2j):
            candidates.append(np.concatenate([h.real.ravel(), h.imag.ravel()]))
    coordinates = orth(np.array(candidates).T, rcond=1e-9)
    return [(c[:d * d] + 1j * c[d * d:]).reshape(d, d) for c in coordinates.T]


def _entropy_objective(coefficients, basis):
    sigma = np.tensordot(coefficients, basis, axes=1)
    eigenvalues = np.clip(np.linalg.eigvalsh(sigma), 1e-300, None)
    return float(np.sum(eigenvalues * np.log(eigenvalues)))


def _max_entropy_state(basis):
    """Maximum-entropy density matrix inside the real span of the Hermitian `basis`."""
    basis = np.array(basis)
    if len(basis) == 1:
        return basis[0] / np.trace(basis[0]).real

    # positive parts of fixed Hermitian points are fixed points too, so their mean is a feasible start
    start = np.zeros_like(basis[0])
    for h in basis:
        eigenvalues, vectors = np.linalg.eigh(h)
        for part in (np.clip(eigenvalues, 0, None), np.clip(-eigenvalues, 0, None)):
            if part.sum() > 1e-12:
                start += (vectors * (part / part.sum())) @ vectors.conj().T
    start /= np.trace(start).real
    flat = basis.reshape(len(basis), -1)
    x0 = np.linalg.lstsq(np.concatenate([flat.real, flat.imag], axis=1).T,
                         np.concatenate([start.real.ravel(), start.imag.ravel()]), rcond=None)[0]

    constraints = [
        {'type': 'eq', 'fun': lambda c: np.real(np.trace(np.tensordot(c, basis, axes=1))) - 1},
        {'type': 'ineq', 'fun': lambda c: np.linalg.eigvalsh(np.tensordot(c, basis, axes=1))[0]},
    ]
    result = minimize(_entropy_objective, x0, args=(basis,), method='SLSQP', constraints=constraints,
                      options={'ftol': 1e-14, 'maxiter': 1000})
    if not result.success:
        logging.debug('Max-entropy selection did not converge ({}), keeping the best iterate'.format(result.message))
    sigma = np.tensordot(result.x, basis, axes=1)
    sigma = (sigma + sigma.conj().T) / 2
    eigenvalues, vectors = np.linalg.eigh(sigma)
    eigenvalues = np.clip(eigenvalues, 0, None)
    return (vectors * (eigenvalues / eigenvalues.sum())) @ vectors.conj().T


def _spectral_exact(geometry, tol):
    d = geometry.ctc_layout.size
    superoperator = np.zeros((d * d, d * d), dtype=complex)
    for k in range(d * d):
        unit = np.zeros(d * d, dtype=complex)
        unit[k] = 1
        superoperator[:, k] = geometry.apply(unit.reshape(d, d)).ravel()
    kernel = null_space(superoperator - np.eye(d * d), rcond=1e-9)
    if kernel.shape[1] == 0:
        raise ConvergenceError('The self-consistency map has no numerically fixed direction', np.inf, 0)
    basis = _hermitian_basis(kernel, d)
    logging.debug('Fixed space of the CTC map has dimension {}'.format(len(basis)))

    sigma = _max_entropy_state(basis)
    residual = _residual(geometry, sigma)
    steps = 0
    while residual > tol and steps < POLISH_STEPS:
        sigma = (sigma + geometry.apply(sigma)) / 2
        residual = _residual(geometry, sigma)
        steps += 1
    return sigma, residual, len(basis)


def deutsch_fixed_point(rho_in, spec, tol=DEFAULT_TOLERANCE, max_iter=DEFAULT_MAX_ITERATIONS, method='auto',
                        initial=None, stall_window=DEFAULT_STALL_WINDOW,
                        spectral_max_dimension=SPECTRAL_MAX_DIMENSION):
    """
    Solves sigma = Tr_{not CTC}[U (rho_in (x) sigma) U^dagger].

    Power iteration starts from the maximally mixed state (or `initial`) and switches to Cesaro averaging
    when the residual stops improving for `stall_window` iterations. With method='auto' a failed iteration
    falls back to the spectral solver when the CTC dimension is at most `spectral_max_dimension`; the
    spectral solver returns the maximum-entropy state of the fixed space.

    :return: a FixedPointReport whose residual is the trace norm of M(sigma) - sigma
    """
    if method not in SOLVER_METHODS:
        raise ValueError('Unknown fixed point method {}, expected one of {}'.format(method, ', '.join(SOLVER_METHODS)))
    if tol <= 0 or max_iter < 1:
        raise ValueError('Invalid solver settings tol={} max_iter={}'.format(tol, max_iter))
    geometry = _CtcGeometry(rho_in, spec)
    d = geometry.ctc_layout.size

    iterations, best_residual = 0, np.inf
    if method in ('auto', 'power_iteration'):
        if initial is None:
            sigma = np.eye(d, dtype=complex) / d
        else:
            if initial.dims != geometry.ctc_layout.dims:
                raise LayoutError('Initial CTC state has layout {}, expected {}'.format(
                    list(initial.dims), list(geometry.ctc_layout.dims)))
            sigma = np.array(initial.matrix)
        solution, residual, iterations, used, best_residual = _power_iteration(
            geometry, sigma, tol, max_iter, stall_window)
        if solution is not None:
            logging.debug('CTC fixed point by {} after {} iterations, residual {:.3e}'.format(
                used, iterations, residual))
            return _report(solution, geometry, residual, iterations, used, tol)
        if method == 'power_iteration' or d > spectral_max_dimension:
            raise ConvergenceError('No CTC fixed point within {} iterations (best residual {:.3e})'.format(
                iterations, best_residual), best_residual, iterations)
        logging.debug('Power iteration failed after {} iterations, falling back to the spectral solver'.format(
            iterations))

    if d > spectral_max_dimension:
        raise DimensionLimitError('The spectral solver is limited to CTC dimension {}, got {}'.format(
            spectral_max_dimension, d))
    solution, residual, fixed_space_dimension = _spectral_exact(geometry, tol)
    if residual > tol:
        raise ConvergenceError('Spectral fixed point misses the tolerance (residual {:.3e})'.format(residual),
                               min(residual, best_residual), iterations)
    return _report(solution, geometry, residual, iterations, 'spectral_exact', tol, fixed_space_dimension)


def ctc_map(rho_in, spec, sigma):
    """One application of the self-consistency map to the CTC state `sigma`."""
    geometry = _CtcGeometry(rho_in, spec)
    return DensityMatrix(geometry.apply(sigma.matrix), geometry.ctc_layout)


def ctc_evolve(rho_in, spec, fp):
    """Output of the chronology-respecting factors once the CTC holds the fixed point `fp`."""
    geometry = _CtcGeometry(rho_in, spec)
    sigma = fp.solution
    if sigma.dims != geometry.ctc_layout.dims:
        raise ConsistencyError('Fixed point has layout {} but the CTC has {}'.format(
            list(sigma.dims), list(geometry.ctc_layout.dims)))
    residual = _residual(geometry, sigma.matrix)
    if residual > fp.tolerance + CONSISTENCY_SLACK:
        raise ConsistencyError('Fixed point is stale for this input: residual {:.3e} exceeds {:.0e}'.format(
            residual, fp.tolerance))
    output = qmath.partial_trace(geometry.evolved(sigma.matrix), geometry.joint, geometry.cr_keep)
    return DensityMatrix(output, rho_in.layout)


def traveler_spec(layout, traveler, self_interaction=None):
    """
    CtcSpec sending the `traveler` factors of `layout` back in time: each traveler factor is swapped into
    its own CTC rail appended after the layout, and may then interact with its past copy through
    `self_interaction`, a unitary on the traveler factors followed by their rails.
    Without a self-interaction this is the OTC.
    """
    traveler = qmath.factor_indices(layout, traveler)
    if not traveler:
        raise LayoutError('A time traveler needs at least one factor')
    n = layout.num_factors
    rails = list(range(n, n + len(traveler)))
    rail_dims = [layout.dims[t] for t in traveler]
    joint = layout.concat(SubsystemLayout(rail_dims))
    qmath.check_dimension(joint.size)

    interaction = np.eye(joint.size, dtype=complex)
    for t, rail in zip(traveler, rails):
        interaction = embed(swap(layout.dims[t]), joint, [t, rail]) @ interaction
    if self_interaction is not None:
        interaction = embed(self_interaction, joint, traveler + rails) @ interaction
    return CtcSpec(interaction, rails, rail_dims)


def otc_apply(rho, traveler):
    """
    Universal decorrelator: the marginal on `traveler` times the marginal on the other factors, in the
    original factor order. A DensityMatrix is read as entanglement-induced mixedness; classical mixtures
    go through otc_apply_ensemble.
    """
    traveler = qmath.factor_indices(rho.layout, traveler)
    if not traveler:
        raise LayoutError('An OTC needs at least one traveler factor')
    n = rho.layout.num_factors
    if len(traveler) == n:
        return rho
    rest = [k for k in range(n) if k not in traveler]
    product = rho.marginal(traveler).tensor(rho.marginal(rest))
    combined = traveler + rest
    return product.permuted([combined.index(k) for k in range(n)])


def otc_apply_ensemble(ensemble, traveler):
    """Branchwise OTC on each pure branch, then classical mixing."""
    matrix = sum(p * otc_apply(density_from_pure(state), traveler).matrix for p, state in ensemble.branches)
    return DensityMatrix(matrix, ensemble.layout)


def otc_apply_each(rho, travelers):
    """Sequential OTC passes, one per traveler set."""
    for traveler in travelers:
        rho = otc_apply(rho, traveler)
    return rho


def ctc_layout(rho_in, spec):
    """Layout of the CTC factors when `spec` acts on `rho_in`."""
    return _CtcGeometry(rho_in, spec).ctc_layout
