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

import collections
import logging
import re

import numpy as np

from otcsim.errors import CnfParseError


EXHAUSTIVE_MAX_VARIABLES = 24
ASSIGNMENT_CHUNK = 1 << 16

PROBLEM_LINE_PATTERN = re.compile(r'^p\s+cnf\s+(\S+)\s+(\S+)\s*$')


class CnfFormula(collections.namedtuple('CnfFormula', ['num_vars', 'clauses'])):
    """
    Clauses over variables 1..num_vars. A literal k > 0 stands for x_k, k < 0 for its negation.
    No clauses means the formula is always true; an empty clause makes it unsatisfiable.
    """
    __slots__ = ()

    def __new__(cls, num_vars, clauses):
        num_vars = int(num_vars)
        if num_vars < 0:
            raise ValueError('The number of variables cannot be negative, got {}'.format(num_vars))
        clauses = tuple(tuple(int(literal) for literal in clause) for clause in clauses)
        for clause in clauses:
            for literal in clause:
                if literal == 0 or abs(literal) > num_vars:
                    raise ValueError('Literal {} is invalid for a formula over {} variables'.format(literal, num_vars))
        return super().__new__(cls, num_vars, clauses)


def parse_dimacs(text):
    """
    Parses DIMACS CNF. Clauses may span lines and share lines; a final clause missing its terminating 0
    is accepted, and a '%' line ends the clause data.

    :param text: the file contents as str or UTF-8 bytes, or a file-like object yielding either
    :return: a CnfFormula
    """
    if hasattr(text, 'read'):
        text = text.read()

    num_vars, declared_clauses, problem_line_number = None, None, None
    clauses = []
    current = []
    last_line_number = 0

    for line_number, line in enumerate(text.splitlines(), start=1):
        last_line_number = line_number
        if isinstance(line, bytes):
            try:
                line = line.decode('utf-8')
            except UnicodeDecodeError as e:
                raise CnfParseError('invalid UTF-8 byte 0x{:02x} at column {}'.format(line[e.start], e.start + 1),
                                    line_number)
        stripped = line.strip()
        if not stripped or stripped.startswith('c'):
            continue
        if stripped.startswith('%'):
            break
        if stripped.startswith('p'):
            if num_vars is not None:
                raise CnfParseError('duplicate problem line (first one on line {})'.format(problem_line_number),
                                    line_number)
            match = PROBLEM_LINE_PATTERN.match(stripped)
            if match is None:
                raise CnfParseError('malformed problem line "{}", expected "p cnf <vars> <clauses>"'.format(
                    stripped), line_number)
            try:
                num_vars, declared_clauses = int(match.group(1)), int(match.group(2))
            except ValueError:
                raise CnfParseError('non-integer value in problem line "{}"'.format(stripped), line_number)
            if num_vars < 0 or declared_clauses < 0:
                raise CnfParseError('negative count in problem line "{}"'.format(stripped), line_number)
            problem_line_number = line_number
            continue

        if num_vars is None:
            raise CnfParseError('clause data before the problem line', line_number)
        for token in stripped.split():
            try:
                literal = int(token)
            except ValueError:
                raise CnfParseError('non-integer token "{}"'.format(token), line_number)
            if literal == 0:
                clauses.append(current)
                current = []
            elif abs(literal) > num_vars:
                raise CnfParseError('literal {} out of range for {} variables'.format(literal, num_vars),
                                    line_number)
            else:
                current.append(literal)

    if num_vars is None:
        raise CnfParseError('missing problem line "p cnf <vars> <clauses>"', last_line_number)
    if current:
        clauses.append(current)
    if len(clauses) != declared_clauses:
        raise CnfParseError('problem line declares {} clauses but {} were found'.format(
            declared_clauses, len(clauses)), last_line_number)

    logging.debug('Parsed CNF with {} variables and {} clauses'.format(num_vars, len(clauses)))
    return CnfFormula(num_vars, clauses)


def load_dimacs(path):
    with open(str(path), 'rb') as f:
        return parse_dimacs(f)


def serialize_dimacs(formula, comments=()):
    lines = ['c {}'.format(comment) for comment in comments]
    lines.append('p cnf {} {}'.format(formula.num_vars, len(formula.clauses)))
    lines.extend(' '.join([str(literal) for literal in clause] + ['0']) for clause in formula.clauses)
    return '\n'.join(lines) + '\n'


def eval_assignment(formula, assignment):
    """
    :param assignment: one truth value per variable, x_1 first
    """
    assignment = [bool(int(bit)) for bit in assignment]
    if len(assignment) != formula.num_vars:
        raise ValueError('Assignment has {} values but the formula has {} variables'.format(
            len(assignment), formula.num_vars))
    return all(
        any((literal > 0) == assignment[abs(literal) - 1] for literal in clause)
        for clause in formula.clauses
    )


def assignment_of_index(index, num_vars):
    """Bits of a composite basis index, x_1 being the most significant."""
    return [(index >> (num_vars - k)) & 1 for k in range(1, num_vars + 1)]


def _evaluate_chunk(formula, indices):
    n = formula.num_vars
    satisfied = np.ones(indices.shape[0], dtype=bool)
    for clause in formula.clauses:
        clause_satisfied = np.zeros(indices.shape[0], dtype=bool)
        for literal in clause:
            bit = (indices >> (n - abs(literal))) & 1
            clause_satisfied |= (bit == 1) if literal > 0 else (bit == 0)
        satisfied &= clause_satisfied
    return satisfied


def _chunks(num_vars):
    total = 1 << num_vars
    for start in range(0, total, ASSIGNMENT_CHUNK):
        yield np.arange(start, min(start + ASSIGNMENT_CHUNK, total), dtype=np.int64)


def _check_exhaustive(formula):
    if formula.num_vars > EXHAUSTIVE_MAX_VARIABLES:
        raise ValueError('Exhaustive enumeration is limited to {} variables, the formula has {}'.format(
            EXHAUSTIVE_MAX_VARIABLES, formula.num_vars))


def satisfying_mask(formula):
    """Truth table of the formula over all 2^n assignments, indexed like assignment_of_index."""
    _check_exhaustive(formula)
    return np.concatenate([_evaluate_chunk(formula, chunk) for chunk in _chunks(formula.num_vars)])


def count_satisfying(formula):
    _check_exhaustive(formula)
    return int(sum(np.count_nonzero(_evaluate_chunk(formula, chunk)) for chunk in _chunks(formula.num_vars)))


def is_tautology(formula):
    """True iff every clause holds a complementary pair, i.e. all 2^n assignments satisfy the formula."""
    return all(any(-literal in clause for literal in clause) for clause in formula.clauses)


def random_cnf(num_vars, num_clauses, k, seed):
    """Uniform random k-CNF: each clause draws k distinct variables with random signs."""
    if not 1 <= k <= num_vars:
        raise ValueError('Clause width {} is impossible with {} variables'.format(k, num_vars))
    rng = np.random.default_rng(seed)
    clauses = []
    for _ in range(num_clauses):
        variables = rng.choice(np.arange(1, num_vars + 1), size=k, replace=False)
        signs = rng.choice([-1, 1], size=k)
        clauses.append([int(v * s) for v, s in zip(variables, signs)])
    return CnfFormula(num_vars, clauses)
