"""
Меры на границе на уровне цилиндров: визуальные меры mu_x, проекции mu_{x,+-},
производная Радона-Никодима, функция beta и тождество дезинтеграции.
Все массы - точные рациональные числа.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from loguru import logger

from apartment import DIAGONAL, T1, ZERO, Shape, TranslationVec, length
from building_ball import (
    BuildingBall,
    SectorGerm,
    count_Z,
    extend_germ,
    germ_through,
    germs_across,
    graph_distance,
    horofunction,
    lattice_distance,
    lattice_horofunction,
    link_plane,
    segment_germ,
    sphere,
    sphere_size,
    vector_distance,
)
from config import GERM_DEPTH_MARGIN
from errors import GermTooShallow, NoCommonFlat, NotRegular, SphereTruncated
from models import CylinderTableModel, VerificationReport, fraction_str
from projective_plane import LINE, POINT, opposite
from utils.logging_utils import LogEventType, log_event


@dataclass
class CylinderTable:
    """Массы клеток Omega_x(y), y из V_lambda(x)"""
    basepoint: int
    shape: Shape
    masses: Dict[int, Fraction]

    @property
    def total(self) -> Fraction:
        return sum(self.masses.values(), Fraction(0))

    def to_model(self) -> CylinderTableModel:
        return CylinderTableModel(
            basepoint=str(self.basepoint),
            depth=self.shape.as_tuple(),
            masses={str(k): v for k, v in sorted(self.masses.items())},
            total=self.total,
        )


def _require_regular(lam: Shape) -> None:
    if not lam.is_regular:
        raise NotRegular(f"Форма {lam} не регулярна", {"shape": str(lam)})


def visual_table(ball: BuildingBall, x: int, lam: Shape) -> CylinderTable:
    """mu_x(Omega_x(y)) = 1/N_lambda"""
    _require_regular(lam)
    cells = sphere(ball, x, lam)
    mass = Fraction(1, len(cells))
    return CylinderTable(x, lam, {y: mass for y in cells})


def refinement_check(ball: BuildingBall, x: int, lam: Shape, step: TranslationVec = T1) -> VerificationReport:
    """Масса клетки формы lambda равна сумме масс ее потомков формы lambda + step"""
    parent = visual_table(ball, x, lam)
    child = visual_table(ball, x, lam + step)
    children: Dict[int, List[int]] = {y: [] for y in parent.masses}
    orphans = []
    for c in child.masses:
        parents = [y for y in parent.masses if vector_distance(ball, y, c) == step]
        if len(parents) != 1:
            orphans.append({"child": c, "parents": parents})
            continue
        children[parents[0]].append(c)

    expected = Fraction(len(child.masses), len(parent.masses))
    bad_mass = [y for y, kids in children.items() if sum((child.masses[c] for c in kids), Fraction(0)) != parent.masses[y]]
    bad_count = [y for y, kids in children.items() if len(kids) != expected]
    checks = {
        "unique_parent": not orphans,
        "mass_refines": not bad_mass,
        "child_count": expected.denominator == 1 and not bad_count,
    }
    witnesses: Dict[str, Any] = {}
    if orphans:
        witnesses["unique_parent"] = orphans[:5]
    if bad_mass:
        witnesses["mass_refines"] = bad_mass[:5]
    if bad_count:
        witnesses["child_count"] = {str(y): len(children[y]) for y in bad_count[:5]}
    return VerificationReport.from_checks(
        "refinement", checks, witnesses=witnesses,
        data={"shape": str(lam), "step": str(step), "children_per_cell": fraction_str(expected)},
    )


# ----------------------------------------------------------------------
# Радон-Никодим
# ----------------------------------------------------------------------
def rn_check(ball: BuildingBall, x: int, y: int, lam: Shape) -> VerificationReport:
    """mu_x(Omega)/mu_y(Omega) = q^(-2 l(h_C(x, y))) на общих клетках"""
    _require_regular(lam)
    q = ball.q
    cells = sphere(ball, x, lam)
    n_lam = len(cells)
    depth = length(lam) + 2 * graph_distance(ball, x, y) + GERM_DEPTH_MARGIN

    checked, skipped, truncated = 0, 0, 0
    failures = []
    ratios: Dict[str, int] = {}
    for z in cells:
        toward_x = segment_germ(ball, z, x)
        toward_y = segment_germ(ball, z, y)
        if None in toward_x or toward_x != toward_y:
            skipped += 1
            continue
        mu = vector_distance(ball, y, z)
        try:
            n_mu = sphere_size(ball, mu)
        except SphereTruncated:
            truncated += 1
            continue
        h = horofunction(ball, x, y, germ_through(ball, x, z, depth))
        ratio = Fraction(n_mu, n_lam)
        expected = Fraction(q) ** (-2 * length(h))
        checked += 1
        key = fraction_str(ratio)
        ratios[key] = ratios.get(key, 0) + 1
        if ratio != expected or h != lam - mu:
            failures.append({"cell": z, "ratio": key, "h": str(h), "expected": fraction_str(expected)})

    checks = {"ratio_matches_horofunction": not failures, "cells_compared": checked > 0}
    report = VerificationReport.from_checks(
        "radon_nikodym", checks,
        witnesses={"ratio_matches_horofunction": failures[:5]} if failures else {},
        data={"shape": str(lam), "checked": checked, "skipped": skipped, "truncated": truncated, "ratios": ratios},
    )
    log_event(LogEventType.COUNTS_MEASURED, f"RN: {checked} общих клеток, {skipped} пропущено", x=x, y=y)
    return report


# ----------------------------------------------------------------------
# Функция beta
# ----------------------------------------------------------------------
def _common_flat(first: SectorGerm, second: SectorGerm) -> Tuple[SectorGerm, SectorGerm]:
    depth = max(first.depth, second.depth, 1)
    first, second = extend_germ(first, depth), extend_germ(second, depth)
    if first.base != second.base:
        raise NoCommonFlat("Ростки начинаются в разных вершинах", {})
    if lattice_distance(first.deepest, second.deepest, first.p) != DIAGONAL.scaled(2 * depth):
        raise NoCommonFlat("Ростки не противоположны", {"depth": depth})
    return first, second


def _beta_at(bx, germ: SectorGerm, germ2: SectorGerm, z) -> TranslationVec:
    return lattice_horofunction(bx, z, germ) + lattice_horofunction(bx, z, germ2)


def beta_value(ball: BuildingBall, x: int, germ: SectorGerm, germ2: SectorGerm) -> TranslationVec:
    """beta_x(C, C') = h_C(x, z) + h_C'(x, z) для z на общей плоскости; две точки z должны совпасть"""
    germ, germ2 = _common_flat(germ, germ2)
    bx = ball.vertices[x]
    values = [_beta_at(bx, germ, germ2, z) for z in (germ.vertices[0], germ.vertices[1])]
    if values[0] != values[1]:
        raise GermTooShallow("beta зависит от выбора z", {"values": [str(v) for v in values]})
    return values[0]


def beta_report(ball: BuildingBall, x: int, y: int, germ: SectorGerm, germ2: SectorGerm) -> VerificationReport:
    """beta_x - beta_y = h_C(x, y) + h_C'(x, y)"""
    bx, by = beta_value(ball, x, germ, germ2), beta_value(ball, y, germ, germ2)
    germ, germ2 = _common_flat(germ, germ2)
    right = horofunction(ball, x, y, germ) + horofunction(ball, x, y, germ2)
    checks = {"basepoint_change": bx - by == right}
    return VerificationReport.from_checks(
        "beta", checks,
        data={"beta_x": str(bx), "beta_y": str(by), "horofunction_sum": str(right)},
    )


# ----------------------------------------------------------------------
# Масса F'_x
# ----------------------------------------------------------------------
def _chamber_germs_opposite(ball: BuildingBall, x: int, y: int, y2: int, plane) -> bool:
    line, point = segment_germ(ball, x, y)
    line2, point2 = segment_germ(ball, x, y2)
    if None in (line, point, line2, point2):
        return False
    return opposite(plane, (POINT, point), (LINE, line2)) and opposite(plane, (POINT, point2), (LINE, line))


def _pair_beta(ball: BuildingBall, x: int, y: int, y2: int, depth: int) -> TranslationVec:
    """beta_x на паре ростков общей плоскости через y и y2"""
    germ, germ2 = germs_across(ball, x, y, y2, depth)
    return beta_value(ball, x, germ, germ2)


def m_mass_of_Fx(ball: BuildingBall, x: int, lam: Shape) -> VerificationReport:
    """Сумма q^(2 l(beta)) mu_x(Omega) mu_x(Omega') по парам с x на геодезической"""
    table = visual_table(ball, x, lam)
    cells = sorted(table.masses)
    plane = link_plane(ball, x)
    q = ball.q
    depth = length(lam) + GERM_DEPTH_MARGIN

    pairs, not_opposite, nonzero, no_flat = 0, [], [], []
    betas: Dict[str, int] = {}
    m_total, product_total = Fraction(0), Fraction(0)
    for y in cells:
        for y2 in cells:
            if not geodesic_pair(ball, x, y, y2):
                continue
            pairs += 1
            cell_mass = table.masses[y] * table.masses[y2]
            product_total += cell_mass
            if not _chamber_germs_opposite(ball, x, y, y2, plane):
                not_opposite.append([y, y2])
            try:
                beta = _pair_beta(ball, x, y, y2, depth)
            except (NoCommonFlat, GermTooShallow) as e:
                no_flat.append({"pair": [y, y2], "error": type(e).__name__})
                continue
            betas[str(beta)] = betas.get(str(beta), 0) + 1
            if beta != ZERO:
                nonzero.append({"pair": [y, y2], "beta": str(beta)})
            m_total += Fraction(q) ** (2 * length(beta)) * cell_mass

    checks = {
        "common_flat": not no_flat,
        "beta_zero_on_flat": not nonzero,
        "germs_opposite": not not_opposite,
        "m_equals_product": m_total == product_total,
        "proper_subfamily": 0 < m_total < 1,
    }
    witnesses: Dict[str, Any] = {}
    if no_flat:
        witnesses["common_flat"] = no_flat[:5]
    if nonzero:
        witnesses["beta_zero_on_flat"] = nonzero[:5]
    if not_opposite:
        witnesses["germs_opposite"] = not_opposite[:5]
    log_event(LogEventType.COUNTS_MEASURED, f"F'_x: {pairs} пар, beta {betas}", x=x, shape=str(lam))
    return VerificationReport.from_checks(
        "m_mass_of_Fx", checks, witnesses=witnesses,
        data={"shape": str(lam), "pairs": pairs, "total": fraction_str(m_total), "betas": betas},
    )


def geodesic_pair(ball: BuildingBall, x: int, y: int, y2: int) -> bool:
    """vd(y2, y) = vd(y2, x) + vd(x, y)"""
    return vector_distance(ball, y2, y) == vector_distance(ball, y2, x) + vector_distance(ball, x, y)


# ----------------------------------------------------------------------
# Проекции +- и дезинтеграция
# ----------------------------------------------------------------------
def _projection(ball: BuildingBall, x: int, y: int, head: Shape, tail: Shape) -> int:
    """Единственная вершина u формы head из x с vd(u, y) = tail"""
    found = [u for u in sphere(ball, x, head) if vector_distance(ball, u, y) == tail]
    if len(found) != 1:
        raise SphereTruncated("Проекция клетки определена неоднозначно", {"y": y, "found": found})
    return found[0]


@dataclass
class PlusMinusTables:
    plus: CylinderTable
    minus: CylinderTable
    plus_of: Dict[int, int]
    minus_of: Dict[int, int]


def plus_minus_tables(ball: BuildingBall, x: int, lam: Shape) -> PlusMinusTables:
    """Клетки группируются по вершине формы (i,0) (соответственно (0,j)) на conv(x, y)"""
    table = visual_table(ball, x, lam)
    head_plus, head_minus = TranslationVec(lam.i, 0), TranslationVec(0, lam.j)
    plus_of, minus_of = {}, {}
    plus: Dict[int, Fraction] = {}
    minus: Dict[int, Fraction] = {}
    for y, mass in table.masses.items():
        u = _projection(ball, x, y, head_plus, TranslationVec(0, lam.j))
        v = _projection(ball, x, y, head_minus, TranslationVec(lam.i, 0))
        plus_of[y], minus_of[y] = u, v
        plus[u] = plus.get(u, Fraction(0)) + mass
        minus[v] = minus.get(v, Fraction(0)) + mass
    return PlusMinusTables(CylinderTable(x, head_plus, plus), CylinderTable(x, head_minus, minus), plus_of, minus_of)


@dataclass(frozen=True)
class MeasureConstants:
    """Константы K, K1, K2, K_+, K_-, K', измеренные один раз на форме shape"""
    shape: Shape
    k: Fraction
    k1: Fraction
    k2: Fraction
    k_plus: Fraction
    k_minus: Fraction
    k_prime: Fraction

    def to_dict(self) -> Dict[str, str]:
        return {
            "shape": str(self.shape),
            "K": fraction_str(self.k),
            "K1": fraction_str(self.k1),
            "K2": fraction_str(self.k2),
            "K_plus": fraction_str(self.k_plus),
            "K_minus": fraction_str(self.k_minus),
            "K_prime": fraction_str(self.k_prime),
        }


def measure_constants(ball: BuildingBall, x: int, lam: Shape = TranslationVec(1, 1)) -> MeasureConstants:
    """Все константы по первой клетке формы lam"""
    _require_regular(lam)
    q = Fraction(ball.q)
    n_lam = len(sphere(ball, x, lam))
    tables = plus_minus_tables(ball, x, lam)
    y = min(tables.plus_of)
    z_plus, z_minus = count_Z(ball, x, y)
    plus_mass = tables.plus.masses[tables.plus_of[y]]
    minus_mass = tables.minus.masses[tables.minus_of[y]]
    constants = MeasureConstants(
        shape=lam,
        k=n_lam / q ** (2 * length(lam)),
        k1=1 / (plus_mass * q ** (2 * lam.i)),
        k2=1 / (minus_mass * q ** (2 * lam.j)),
        k_plus=z_plus / q ** lam.j,
        k_minus=z_minus / q ** lam.i,
        k_prime=z_plus * z_minus * plus_mass * minus_mass * n_lam / q ** length(lam),
    )
    logger.debug(f"Константы по форме {lam}: {constants.to_dict()}")
    return constants


def measure_k_prime(ball: BuildingBall, x: int, lam: Shape = TranslationVec(1, 1)) -> Fraction:
    return measure_constants(ball, x, lam).k_prime


def _mass_law_failures(table: CylinderTable, expected: Fraction) -> List[Dict[str, Any]]:
    return [
        {"cell": u, "mass": fraction_str(mass), "expected": fraction_str(expected)}
        for u, mass in sorted(table.masses.items()) if mass != expected
    ]


def plus_minus_report(ball: BuildingBall, x: int, lam: Shape,
                      constants: Optional[MeasureConstants] = None) -> VerificationReport:
    """Массы mu_{x,+} равны 1/(K1 q^2i), mu_{x,-} - 1/(K2 q^2j) с K1, K2 из constants"""
    if constants is None:
        constants = measure_constants(ball, x)
    tables = plus_minus_tables(ball, x, lam)
    q = Fraction(ball.q)
    n_plus, n_minus = len(sphere(ball, x, tables.plus.shape)), len(sphere(ball, x, tables.minus.shape))
    plus_bad = _mass_law_failures(tables.plus, 1 / (constants.k1 * q ** (2 * lam.i)))
    minus_bad = _mass_law_failures(tables.minus, 1 / (constants.k2 * q ** (2 * lam.j)))
    checks = {
        "plus_total": tables.plus.total == 1,
        "minus_total": tables.minus.total == 1,
        "plus_constant": set(tables.plus.masses.values()) == {Fraction(1, n_plus)},
        "minus_constant": set(tables.minus.masses.values()) == {Fraction(1, n_minus)},
        "plus_mass_law": not plus_bad,
        "minus_mass_law": not minus_bad,
    }
    witnesses: Dict[str, Any] = {}
    if plus_bad:
        witnesses["plus_mass_law"] = plus_bad[:5]
    if minus_bad:
        witnesses["minus_mass_law"] = minus_bad[:5]
    return VerificationReport.from_checks(
        "plus_minus", checks, witnesses=witnesses,
        data={
            "shape": str(lam),
            "K1": fraction_str(n_plus / q ** (2 * lam.i)),
            "K2": fraction_str(n_minus / q ** (2 * lam.j)),
            "constants": constants.to_dict(),
            "plus_mass": fraction_str(next(iter(tables.plus.masses.values()))),
            "minus_mass": fraction_str(next(iter(tables.minus.masses.values()))),
            "plus_cells": len(tables.plus.masses),
            "minus_cells": len(tables.minus.masses),
        },
    )


@dataclass
class _Term:
    plus_mass: Fraction
    minus_mass: Fraction
    z_plus: int
    z_minus: int


def _disintegration_terms(ball: BuildingBall, x: int, lam: Shape) -> Dict[int, _Term]:
    """Для каждой клетки: массы проекций и |Z_+|, |Z_-|"""
    tables = plus_minus_tables(ball, x, lam)
    terms = {}
    for y in sorted(tables.plus_of):
        z_plus, z_minus = count_Z(ball, x, y)
        terms[y] = _Term(tables.plus.masses[tables.plus_of[y]], tables.minus.masses[tables.minus_of[y]], z_plus, z_minus)
    return terms


def disintegration_check(ball: BuildingBall, x: int, lam: Shape,
                         constants: Optional[MeasureConstants] = None) -> VerificationReport:
    """
    |Z_+||Z_-| mu_+ mu_- / (K' q^l) = mu_x(Omega_x(y)) для всех y из V_lambda(x)

    Все степенные законы (N_lambda, массы mu_+-, |Z_+-|) и само тождество
    проверяются с одним набором констант, измеренным на форме constants.shape.
    """
    _require_regular(lam)
    q = Fraction(ball.q)
    if constants is None:
        constants = measure_constants(ball, x)
    n_lam = len(sphere(ball, x, lam))
    target = Fraction(1, n_lam)
    plus_law = 1 / (constants.k1 * q ** (2 * lam.i))
    minus_law = 1 / (constants.k2 * q ** (2 * lam.j))
    z_law = (constants.k_plus * q ** lam.j, constants.k_minus * q ** lam.i)

    failures: Dict[str, List[Dict[str, Any]]] = {"identity_holds": [], "mass_laws": [], "z_laws": []}
    z_values = set()
    for y, term in _disintegration_terms(ball, x, lam).items():
        z_values.add((term.z_plus, term.z_minus))
        left = term.z_plus * term.z_minus * term.plus_mass * term.minus_mass / (constants.k_prime * q ** length(lam))
        if left != target:
            failures["identity_holds"].append({"cell": y, "left": fraction_str(left), "z": [term.z_plus, term.z_minus]})
        if (term.plus_mass, term.minus_mass) != (plus_law, minus_law):
            failures["mass_laws"].append({"cell": y, "plus": fraction_str(term.plus_mass), "minus": fraction_str(term.minus_mass)})
        if (term.z_plus, term.z_minus) != z_law:
            failures["z_laws"].append({"cell": y, "z": [term.z_plus, term.z_minus]})

    k_here = n_lam / q ** (2 * length(lam))
    checks = {
        "identity_holds": not failures["identity_holds"],
        "k_law": k_here == constants.k,
        "mass_laws": not failures["mass_laws"],
        "z_laws": not failures["z_laws"],
        "z_counts_constant": len(z_values) == 1,
    }
    witnesses: Dict[str, Any] = {name: found[:5] for name, found in failures.items() if found}
    if k_here != constants.k:
        witnesses["k_law"] = {"measured": fraction_str(k_here), "expected": fraction_str(constants.k)}
    report = VerificationReport.from_checks(
        "disintegration", checks, witnesses=witnesses,
        data={
            "shape": str(lam),
            "K": fraction_str(constants.k),
            "K_prime": fraction_str(constants.k_prime),
            "K_plus": fraction_str(constants.k_plus),
            "K_minus": fraction_str(constants.k_minus),
            "constants": constants.to_dict(),
            "cell_mass": fraction_str(target),
        },
    )
    logger.info(f"Дезинтеграция для {lam}: {report.status}, K'={fraction_str(constants.k_prime)}")
    return report
