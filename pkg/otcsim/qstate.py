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
Validated quantum states and observables.

Every DensityMatrix, PureState, Ensemble and Observable is checked on construction and is immutable
afterwards. Non-linear channels treat a DensityMatrix as entanglement-induced mixedness; classically
prepared mixtures must be passed around as an Ensemble of pure branches.
"""

import collections
import json
import logging

import numpy as np

import otcsim.qmath as qmath

from otcsim.errors import FixtureError, InvalidStateError, LayoutError, NotHermitianError
from otcsim.qmath import SubsystemLayout


TRACE_TOLERANCE = 1e-9
PSD_TOLERANCE = 1e-9
NORM_TOLERANCE = 1e-10
PROBABILITY_TOLERANCE = 1e-9
BLOCH_TOLERANCE = 1e-9

IDENTITY_2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def _as_layout(layout):
    return layout if isinstance(layout, SubsystemLayout) else SubsystemLayout(layout)


def _frozen(array):
    array = np.array(array, dtype=complex)
    array.setflags(write=False)
    return array


class DensityMatrix(object):

    def __init__(self, matrix, layout):
        layout = _as_layout(layout)
        matrix = qmath.as_matrix(matrix)
        qmath.check_layout(matrix, layout)
        try:
            qmath.check_hermitian(matrix)
        except NotHermitianError as e:
            raise InvalidStateError('Not a density matrix: {}'.format(e))

        trace = np.trace(matrix).real
        if abs(trace - 1) > TRACE_TOLERANCE:
            raise InvalidStateError('Not a density matrix: trace is {!r}'.format(trace))

        matrix = (matrix + matrix.conj().T) / 2
        eigenvalues, eigenvectors = np.linalg.eigh(matrix)
        if eigenvalues[0] < -PSD_TOLERANCE:
            raise InvalidStateError('Not a density matrix: minimum eigenvalue is {:.3e}'.format(eigenvalues[0]))
        if eigenvalues[0] < 0:
            # numerical drift only: clip and renormalize
            eigenvalues = np.clip(eigenvalues, 0.0, None)
            eigenvalues = eigenvalues / eigenvalues.sum()
            matrix = (eigenvectors * eigenvalues) @ eigenvectors.conj().T

        self._matrix = _frozen(matrix)
        self._layout = layout
        self._eigenvalues = eigenvalues

    @classmethod
    def maximally_mixed(cls, layout):
        layout = _as_layout(layout)
        return cls(np.eye(layout.size, dtype=complex) / layout.size, layout)

    @property
    def matrix(self):
        return self._matrix

    @property
    def layout(self):
        return self._layout

    @property
    def dims(self):
        return self._layout.dims

    @property
    def dim(self):
        return self._layout.size

    @property
    def eigenvalues(self):
        return self._eigenvalues

    def purity(self):
        return float(np.real(np.trace(self._matrix @ self._matrix)))

    def marginal(self, keep):
        keep = qmath.factor_indices(self._layout, keep)
        if not keep:
            raise LayoutError('A marginal needs at least one kept factor')
        return DensityMatrix(qmath.partial_trace(self._matrix, self._layout, keep), self._layout.subset(keep))

    def tensor(self, other):
        return DensityMatrix(qmath.tensor_product(self._matrix, other.matrix), self._layout.concat(other.layout))

    def permuted(self, perm):
        return DensityMatrix(qmath.permute_subsystems(self._matrix, self._layout, perm),
                             self._layout.permuted(perm))

    def is_close(self, other, atol=1e-10):
        return self.dims == other.dims and bool(np.max(np.abs(self._matrix - other.matrix)) <= atol)

    def __repr__(self):
        return 'DensityMatrix(dims={}, purity={:.6f})'.format(list(self.dims), self.purity())


class PureState(object):

    def __init__(self, amplitudes, layout):
        layout = _as_layout(layout)
        amplitudes = np.asarray(amplitudes, dtype=complex)
        if amplitudes.ndim != 1:
            raise InvalidStateError('Amplitudes must be a vector, got shape {}'.format(amplitudes.shape))
        if amplitudes.shape[0] != layout.size:
            raise LayoutError('{} amplitudes do not match layout {}'.format(amplitudes.shape[0], list(layout.dims)))
        qmath.check_dimension(layout.size)
        norm = np.vdot(amplitudes, amplitudes).real
        if abs(norm - 1) > NORM_TOLERANCE:
            raise InvalidStateError('Squared norm of a pure state must be 1, got {!r}'.format(norm))
        self._amplitudes = _frozen(amplitudes)
        self._layout = layout

    @property
    def amplitudes(self):
        return self._amplitudes

    @property
    def layout(self):
        return self._layout

    @property
    def dims(self):
        return self._layout.dims

    def tensor(self, other):
        return PureState(np.kron(self._amplitudes, other.amplitudes), self._layout.concat(other.layout))

    def evolve(self, unitary, check=True):
        unitary = qmath.as_matrix(unitary)
        if check:
            qmath.check_unitary(unitary)
        return PureState(unitary @ self._amplitudes, self._layout)

    def reduced(self, keep):
        """
        Marginal of |psi><psi| on the kept factors, computed from the amplitudes without forming the
        global density matrix.
        """
        keep = qmath.factor_indices(self._layout, keep)
        if not keep:
            raise LayoutError('A marginal needs at least one kept factor')
        tensor = np.moveaxis(self._amplitudes.reshape(self._layout.dims), keep, list(range(len(keep))))
        kept = self._layout.subset(keep)
        block = tensor.reshape(kept.size, -1)
        return DensityMatrix(block @ block.conj().T, kept)

    def __repr__(self):
        return 'PureState(dims={})'.format(list(self.dims))


def basis_state(layout, index):
    """
    Computational basis state. `index` is either the composite index or one digit per factor.
    """
    layout = _as_layout(layout)
    if not isinstance(index, (int, np.integer)):
        index = int(np.ravel_multi_index(tuple(index), layout.dims))
    if not 0 <= index < layout.size:
        raise LayoutError('Basis index {} is out of range for layout {}'.format(index, list(layout.dims)))
    amplitudes = np.zeros(layout.size, dtype=complex)
    amplitudes[index] = 1
    return PureState(amplitudes, layout)


class Ensemble(object):

    def __init__(self, branches):
        branches = tuple((float(p), state) for p, state in branches)
        if not branches:
            raise InvalidStateError('An ensemble needs at least one branch')
        for p, state in branches:
            if not isinstance(state, PureState):
                raise TypeError('Ensemble branches must be pure states; diagonalize mixed branches first')
            if p < -PROBABILITY_TOLERANCE or p > 1 + PROBABILITY_TOLERANCE:
                raise InvalidStateError('Branch probability {!r} is outside [0, 1]'.format(p))
        total = sum(p for p, _ in branches)
        if abs(total - 1) > PROBABILITY_TOLERANCE:
            raise InvalidStateError('Branch probabilities sum to {!r}, not 1'.format(total))
        layouts = {state.layout for _, state in branches}
        if len(layouts) != 1:
            raise LayoutError('All branches of an ensemble must share one layout, got {}'.format(
                sorted(list(layout.dims) for layout in layouts)))
        self._branches = branches
        self._layout = branches[0][1].layout

    @property
    def branches(self):
        return self._branches

    @property
    def layout(self):
        return self._layout


class Observable(object):

    def __init__(self, matrix, name=None):
        matrix = qmath.as_matrix(matrix)
        eigenvalues, eigenbasis = qmath.eig_hermitian(matrix)
        self._matrix = _frozen((matrix + matrix.conj().T) / 2)
        self._eigenvalues = eigenvalues
        self._eigenbasis = _frozen(eigenbasis)
        self.name = name

    @property
    def matrix(self):
        return self._matrix

    @property
    def eigenvalues(self):
        return self._eigenvalues

    @property
    def eigenbasis(self):
        return self._eigenbasis

    @property
    def dim(self):
        return self._matrix.shape[0]

    @property
    def min_eigenvalue(self):
        return float(self._eigenvalues[0])

    @property
    def max_eigenvalue(self):
        return float(self._eigenvalues[-1])

    @property
    def spread(self):
        return self.max_eigenvalue - self.min_eigenvalue

    def __repr__(self):
        return 'Observable(name={!r}, eigenvalues={})'.format(self.name, np.round(self._eigenvalues, 6).tolist())


NAMED_OBSERVABLES = {
    'sigmax': SIGMA_X,
    'sigmay': SIGMA_Y,
    'sigmaz': SIGMA_Z,
}


def named_observable(name):
    try:
        return Observable(NAMED_OBSERVABLES[name], name=name)
    except KeyError:
        raise ValueError('Unknown observable "{}", expected one of {}'.format(name, sorted(NAMED_OBSERVABLES)))


class BlochVector(collections.namedtuple('BlochVector', ['n_x', 'n_y', 'n_z'])):
    __slots__ = ()

    def __new__(cls, n_x, n_y, n_z):
        vector = super().__new__(cls, float(n_x), float(n_y), float(n_z))
        if vector.norm ** 2 > 1 + BLOCH_TOLERANCE:
            raise InvalidStateError('Bloch vector {} lies outside the unit ball'.format(tuple(vector)))
        return vector

    @property
    def norm(self):
        return float(np.sqrt(self.n_x ** 2 + self.n_y ** 2 + self.n_z ** 2))


def density_from_pure(psi):
    amplitudes = psi.amplitudes
    return DensityMatrix(np.outer(amplitudes, amplitudes.conj()), psi.layout)


def _check_qubit(rho):
    if rho.dims != (2,):
        raise LayoutError('Expected a single qubit, got layout {}'.format(list(rho.dims)))


def bloch_of(rho):
    _check_qubit(rho)
    m = rho.matrix
    return BlochVector(*(np.real(np.trace(sigma @ m)) for sigma in (SIGMA_X, SIGMA_Y, SIGMA_Z)))


def state_of_bloch(bloch):
    if not isinstance(bloch, BlochVector):
        bloch = BlochVector(*bloch)
    matrix = (IDENTITY_2 + bloch.n_x * SIGMA_X + bloch.n_y * SIGMA_Y + bloch.n_z * SIGMA_Z) / 2
    return DensityMatrix(matrix, (2,))


def expectation(rho, obs):
    if rho.dim != obs.dim:
        raise LayoutError('Observable of dimension {} cannot be measured on a state of dimension {}'.format(
            obs.dim, rho.dim))
    return float(np.real(np.trace(obs.matrix @ rho.matrix)))


def mix(ensemble):
    matrix = sum(p * np.outer(state.amplitudes, state.amplitudes.conj()) for p, state in ensemble.branches)
    return DensityMatrix(matrix, ensemble.layout)


def born_probabilities(rho, obs):
    """Probabilities of the eigenvalues of `obs`, in the order of obs.eigenvalues."""
    if rho.dim != obs.dim:
        raise LayoutError('Observable of dimension {} cannot be measured on a state of dimension {}'.format(
            obs.dim, rho.dim))
    basis = obs.eigenbasis
    return np.real(np.einsum('ji,jk,ki->i', basis.conj(), rho.matrix, basis))


def sample_outcomes(probabilities, values, shots, seed):
    """
    Draws `shots` i.i.d. values with the given probabilities. `seed` is anything numpy.random.default_rng
    accepts; equal seeds give equal sequences.
    """
    if shots < 1:
        raise ValueError('At least one shot is required, got {}'.format(shots))
    probabilities = np.asarray(probabilities, dtype=float)
    if np.min(probabilities) < -PROBABILITY_TOLERANCE:
        raise InvalidStateError('Negative Born probability {:.3e}: the state is invalid'.format(
            np.min(probabilities)))
    probabilities = np.clip(probabilities, 0.0, None)
    probabilities = probabilities / probabilities.sum()
    rng = np.random.default_rng(seed)
    return np.asarray(values, dtype=float)[rng.choice(len(probabilities), size=int(shots), p=probabilities)]


def measure_sample(rho, obs, shots, seed):
    return sample_outcomes(born_probabilities(rho, obs), obs.eigenvalues, shots, seed)


def fidelity(rho, sigma):
    """Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2."""
    if rho.dims != sigma.dims:
        raise LayoutError('Cannot compare states of layouts {} and {}'.format(list(rho.dims), list(sigma.dims)))
    root = qmath.psd_sqrt(rho.matrix)
    inner = root @ sigma.matrix @ root
    eigenvalues = np.linalg.eigvalsh((inner + inner.conj().T) / 2)
    return float(min(1.0, np.sum(np.sqrt(np.clip(eigenvalues, 0.0, None))) ** 2))


def random_pure_state(layout, seed):
    layout = _as_layout(layout)
    rng = np.random.default_rng(seed)
    amplitudes = rng.normal(size=layout.size) + 1j * rng.normal(size=layout.size)
    return PureState(amplitudes / np.linalg.norm(amplitudes), layout)


def random_density_matrix(layout, seed, rank=None):
    layout = _as_layout(layout)
    rng = np.random.default_rng(seed)
    rank = rank or layout.size
    g = rng.normal(size=(layout.size, rank)) + 1j * rng.normal(size=(layout.size, rank))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real, layout)


def matrix_to_json(matrix, dims):
    flat = np.asarray(matrix, dtype=complex).reshape(-1)
    return {
        'dims': [int(d) for d in dims],
        're': flat.real.tolist(),
        'im': flat.imag.tolist(),
    }


def state_to_json(rho):
    return matrix_to_json(rho.matrix, rho.dims)


def _decode_fixture(data):
    try:
        layout = SubsystemLayout(data['dims'])
        flat = np.asarray(data['re'], dtype=float) + 1j * np.asarray(data['im'], dtype=float)
    except (KeyError, TypeError, ValueError) as e:
        raise FixtureError('Malformed fixture, expected {{dims, re, im}}: {}'.format(e))
    if flat.ndim != 1:
        raise FixtureError('Fixture entries "re" and "im" must be flat lists')
    return layout, flat


def state_from_json(data):
    """
    Decodes a state fixture. A flat list of layout.size entries is a pure state vector, one of
    layout.size ** 2 entries is a row-major density matrix.
    """
    layout, flat = _decode_fixture(data)
    if flat.shape[0] == layout.size:
        return density_from_pure(PureState(flat, layout))
    if flat.shape[0] == layout.size ** 2:
        return DensityMatrix(flat.reshape(layout.size, layout.size), layout)
    raise FixtureError('{} entries match neither a vector nor a matrix over layout {}'.format(
        flat.shape[0], list(layout.dims)))


def observable_from_json(data, name=None):
    _, matrix = matrix_from_json(data)
    try:
        return Observable(matrix, name=name)
    except NotHermitianError as e:
        raise FixtureError('Observable fixture is not Hermitian: {}'.format(e))


def _read_json(path):
    logging.debug('Loading fixture from {}'.format(path))
    try:
        with open(str(path), 'r') as f:
            return json.load(f)
    except ValueError as e:
        raise FixtureError('{} is not valid JSON: {}'.format(path, e))


def load_state(path):
    return state_from_json(_read_json(path))


def load_observable(path):
    return observable_from_json(_read_json(path), name=str(path))


def matrix_from_json(data):
    """
    :return: (layout, square matrix) of a row-major matrix fixture
    """
    layout, flat = _decode_fixture(data)
    if flat.shape[0] != layout.size ** 2:
        raise FixtureError('A matrix fixture needs {} entries, got {}'.format(layout.size ** 2, flat.shape[0]))
    return layout, flat.reshape(layout.size, layout.size)


def load_matrix(path):
    return matrix_from_json(_read_json(path))
