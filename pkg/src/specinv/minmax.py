"""Min-max critical values of piecewise-linear functions.

Functions are sampled at vertices and extended to cells by the lower-star
rule (a cell enters the sublevel filtration at the max of its vertex
values, sublevels use strict inequality).  The selector returns, for a
nonzero homology class, the smallest threshold at which the class is hit
by the inclusion of the sublevel complex; it is computed as the least
possible top cell value over all representative cycles, which one column
reduction per degree answers for every class at once.  A naive
per-threshold sweep is kept alongside as the independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import fields
from ._kernel import ReducedBasis
from .complexes.homology import (HomologyClass, Subcomplex,
                                 all_nonzero_classes, boundary_field_matrix,
                                 boundary_gf2_csc, image_rank_gf2,
                                 permute_csc_columns)
from .complexes.products import intersection_product
from .errors import InputError


class SampledFunction:
    """Real values on the vertices of a cell complex, lower-star extended."""

    def __init__(self, cpx, values):
        self.complex = cpx
        self.values = np.asarray(values, dtype=float)
        if len(self.values) != cpx.n_vertices:
            raise InputError(
                f"function has {len(self.values)} values for "
                f"{cpx.n_vertices} vertices")
        if not np.isfinite(self.values).all():
            raise InputError("function values must be finite")
        self._cell_values = None
        self._sweeps = {}

    @property
    def cell_values(self):
        """Per-degree arrays of lower-star cell values."""
        if self._cell_values is None:
            self._cell_values = self.complex.lower_star_values(self.values)
        return self._cell_values

    def shifted(self, constant):
        return SampledFunction(self.complex, self.values + constant)

    def sweep(self, degree):
        if degree not in self._sweeps:
            self._sweeps[degree] = _SweepReduction(self, degree)
        return self._sweeps[degree]


@dataclass
class FiltrationSweep:
    """Candidate thresholds of a sublevel sweep and the subcomplex builder.

    Thresholds are the distinct cell values interleaved with midpoints
    (plus one value past the max), so the infimum over memberships is
    realized exactly at a cell value.
    """

    function: SampledFunction
    thresholds: np.ndarray
    cell_levels: np.ndarray

    @classmethod
    def of(cls, f: SampledFunction):
        levels = np.unique(np.concatenate([cv for cv in f.cell_values if len(cv)]))
        thresholds = [levels[0]]
        for lo, hi in zip(levels[:-1], levels[1:]):
            thresholds.extend([0.5 * (lo + hi), hi])
        thresholds.append(levels[-1] + 1.0)
        return cls(f, np.asarray(thresholds), levels)

    def subcomplex(self, a):
        return sublevel(self.function, a)


def sublevel(f: SampledFunction, a: float) -> Subcomplex:
    """Lower-star subcomplex of cells with every vertex value < a."""
    masks = [cv < a for cv in f.cell_values]
    return Subcomplex(f.complex, masks, validate=False)


class _SweepReduction:
    """One column reduction serving every class query of one degree."""

    def __init__(self, f: SampledFunction, degree):
        cpx = f.complex
        cv = f.cell_values[degree]
        self.order = np.argsort(cv, kind="stable")
        self.rank_of_cell = np.empty(len(cv), dtype=np.int64)
        self.rank_of_cell[self.order] = np.arange(len(cv))
        self.sorted_values = cv[self.order]
        if degree + 1 <= cpx.dim:
            col_order = np.argsort(f.cell_values[degree + 1], kind="stable")
            indptr, indices, nrows, _ = boundary_gf2_csc(
                cpx, degree + 1, row_rank=self.rank_of_cell)
            indptr, indices = permute_csc_columns(indptr, indices, col_order)
            self.basis = ReducedBasis(indptr, indices, nrows)
        else:
            empty = np.zeros(1, dtype=np.int64)
            self.basis = ReducedBasis(empty, np.zeros(0, dtype=np.int32), len(cv))

    def minimal_cycle(self, chain_cells):
        """Representative with the least possible top rank, as sorted ranks."""
        ranks = np.sort(self.rank_of_cell[np.asarray(chain_cells, dtype=np.int64)])
        return self.basis.eliminate(ranks)


def _c_ls_component(f: SampledFunction, degree, rep_chain) -> float:
    sweep = f.sweep(degree)
    residual = sweep.minimal_cycle(rep_chain)
    if len(residual) == 0:
        raise InputError("class is zero in the homology of the complex")
    return float(sweep.sorted_values[int(residual[-1])])


def c_ls(alpha: HomologyClass, f: SampledFunction) -> float:
    """Smallest sweep threshold at which alpha enters the sublevel image.

    Equals a vertex value of f (the minimum over representative cycles of
    the top lower-star value); for mixed classes, the max over graded
    components, since the image of a sublevel inclusion is graded.
    """
    if alpha.complex is not f.complex:
        raise InputError("class and function live on different complexes")
    return max(_c_ls_component(f, comp.degree, comp.representative())
               for comp in alpha.component_classes())


def c_ls_by_sweep(alpha: HomologyClass, f: SampledFunction) -> float:
    """Independent oracle: recompute image membership at every threshold.

    Builds, from scratch and per threshold, the boundary image of the full
    complex and the cycles of the sublevel subcomplex, then asks the exact
    linear algebra for membership.  Only sensible on small complexes.
    """
    return max(_c_ls_by_sweep_component(f, comp.degree, comp.representative())
               for comp in alpha.component_classes())


def _c_ls_by_sweep_component(f: SampledFunction, degree, rep) -> float:
    cpx = f.complex
    target = np.zeros(cpx.n_cells(degree), dtype=np.uint8)
    target[rep] = 1
    boundary_cols = boundary_field_matrix(cpx, degree + 1, fields.GF2)
    sweep = FiltrationSweep.of(f)
    for a in sweep.thresholds:
        sub = sweep.subcomplex(a)
        if not sub.masks[degree].any():
            continue
        sub_cells = np.flatnonzero(sub.masks[degree])
        d_sub = boundary_field_matrix(cpx, degree, fields.GF2,
                                      col_mask=sub.masks[degree])
        cycle_coeffs = fields.kernel_basis(d_sub)
        columns = list(boundary_cols.columns)
        for coeffs in cycle_coeffs:
            col = [(int(sub_cells[i]), 1) for i, c in enumerate(coeffs) if c]
            columns.append(sorted(col))
        stacked = fields.SparseColumnMatrix(
            cpx.n_cells(degree), len(columns), columns, fields.GF2)
        ok, _ = fields.in_image(stacked, target)
        if ok:
            below = sweep.cell_levels[sweep.cell_levels < a]
            return float(below[-1])
    raise InputError("class is zero in the homology of the complex")


@dataclass
class EssentialValuesReport:
    values: list
    table: list  # (label, value)

    def as_dict(self):
        return {
            "essential_values": self.values,
            "classes": [
                {"class": lab, "value": v} for lab, v in self.table
            ],
        }


def essential_values(f: SampledFunction) -> EssentialValuesReport:
    """All selector values {c_ls(alpha, f)} over nonzero GF(2) classes."""
    table = []
    for alpha in all_nonzero_classes(f.complex):
        table.append((alpha.label(), c_ls(alpha, f)))
    values = sorted({v for _, v in table})
    return EssentialValuesReport(values, table)


@dataclass
class RadiusReport:
    radius: int
    image_ranks: dict
    nontrivial: bool


@dataclass
class NontrivialityReport:
    radii: list
    entries: list = field(default_factory=list)

    @property
    def verdict(self):
        return "nontrivial" if all(e.nontrivial for e in self.entries) else "trivial"

    @property
    def first_failing_radius(self):
        for e in self.entries:
            if not e.nontrivial:
                return e.radius
        return None

    def as_dict(self):
        return {
            "verdict": self.verdict,
            "first_failing_radius": self.first_failing_radius,
            "radii": [
                {"radius": e.radius,
                 "image_ranks": {str(j): r for j, r in e.image_ranks.items()},
                 "nontrivial": e.nontrivial}
                for e in self.entries
            ],
        }


def is_homologically_nontrivial(A: Subcomplex, ladder=(1, 2, 3)) -> NontrivialityReport:
    """Per-radius check that star neighborhoods of A carry positive-degree
    homology mapping nontrivially into the ambient complex."""
    if A.is_empty():
        raise InputError("cannot test an empty subcomplex")
    report = NontrivialityReport(list(ladder))
    current = A
    prev_steps = 0
    for r in sorted(ladder):
        current = current.star_expand(r - prev_steps)
        prev_steps = r
        ranks = {}
        for j in range(1, A.parent.dim + 1):
            ranks[j] = image_rank_gf2(current, j)
        report.entries.append(
            RadiusReport(r, ranks, any(v > 0 for v in ranks.values())))
    return report


def minimal_value_gap(values):
    distinct = np.unique(np.asarray(values, dtype=float))
    if len(distinct) < 2:
        return 0.0
    return float(np.min(np.diff(distinct)))


def critical_set_at_level(f: SampledFunction, level, half_gap=None) -> Subcomplex:
    """Discrete critical set: closure of the cells whose lower-star value
    lies within half the minimal vertex-value gap of the level."""
    if half_gap is None:
        half_gap = 0.5 * minimal_value_gap(f.values)
    masks = [np.abs(cv - level) <= half_gap for cv in f.cell_values]
    return Subcomplex.closure(f.complex, masks)


@dataclass
class Coincidence:
    alpha_label: str
    beta_label: str
    product_label: str
    level: float
    verdict: str
    nontriviality: NontrivialityReport

    def as_dict(self):
        return {
            "alpha": self.alpha_label,
            "beta": self.beta_label,
            "product": self.product_label,
            "level": self.level,
            "verdict": self.verdict,
            "nontriviality": self.nontriviality.as_dict(),
        }


@dataclass
class LsCheckReport:
    essential: EssentialValuesReport
    coincidences: list

    def as_dict(self):
        return {
            "essential_values": self.essential.values,
            "coincidences": [c.as_dict() for c in self.coincidences],
        }


def ls_check(f: SampledFunction, ladder=(1, 2, 3)) -> LsCheckReport:
    """Find coincidences c_ls(alpha . beta) == c_ls(alpha) with
    deg(beta) < dim, and test the critical set at each coincidence level.
    """
    cpx = f.complex
    classes = all_nonzero_classes(cpx)
    betas = all_nonzero_classes(cpx, max_degree=cpx.dim - 1) if cpx.dim else []
    values = {c.components: c_ls(c, f) for c in classes}
    coincidences = []
    level_reports = {}
    for alpha in classes:
        v_alpha = values[alpha.components]
        for beta in betas:
            prod = intersection_product(alpha, beta)
            if prod is None:
                continue
            v_prod = values[prod.components]
            if v_prod != v_alpha:
                continue
            level = v_alpha
            if level not in level_reports:
                crit = critical_set_at_level(f, level)
                level_reports[level] = is_homologically_nontrivial(crit, ladder)
            rep = level_reports[level]
            coincidences.append(Coincidence(
                alpha.label(), beta.label(), prod.label(), level,
                rep.verdict, rep))
    return LsCheckReport(essential_values(f), coincidences)
