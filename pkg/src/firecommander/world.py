"""Placement grid, facilities and fire regions.

The map is a square of 800, 1000 or 1200 distance units carved into 50-unit
placement cells. Cells are addressed chess-style: column letter (A = leftmost)
plus 1-based zero-padded row, so "A-01" is the top-left cell and "D-05" is
column 3, row 4 in zero-based indices. Facilities occupy axis-aligned blocks
of whole cells and must not overlap each other; fire regions are single cells
that may overlap other regions but never a facility.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

CELL_UNITS = 50.0
WORLD_SIZES = (800, 1000, 1200)
DURATIONS = (60, 120, 180)

_CELL_RE = re.compile(r"^([A-Z])-([0-9]{2,3})$")


class FacilityKind(Enum):
    BASE = "base"
    HOUSE = "house"
    HOSPITAL = "hospital"
    POWER_STATION = "power_station"
    LAKE = "lake"
    ROAD = "road"


# Penalty applied per firespot sitting inside the footprint, per scored second.
PENALTY_COEFFICIENTS = {
    FacilityKind.BASE: 5.0,
    FacilityKind.POWER_STATION: 5.0,
    FacilityKind.HOSPITAL: 2.0,
    FacilityKind.HOUSE: 1.0,
    FacilityKind.ROAD: 0.0,
    FacilityKind.LAKE: 0.0,
}

# Footprints in placement cells, (width, height). The base is the only kind
# with two orientations; "horizontal" bases sit on the top or bottom edge,
# "vertical" bases on the left or right edge.
_FOOTPRINTS = {
    FacilityKind.HOUSE: (2, 2),
    FacilityKind.HOSPITAL: (2, 2),
    FacilityKind.POWER_STATION: (2, 2),
    FacilityKind.LAKE: (4, 3),
    FacilityKind.ROAD: (1, 1),
}
BASE_FOOTPRINTS = {"horizontal": (4, 2), "vertical": (2, 4)}

DISPLAY_COLORS = {
    FacilityKind.BASE: "#e8c51a",
    FacilityKind.HOUSE: "#e07b28",
    FacilityKind.HOSPITAL: "#f4f4f4",
    FacilityKind.POWER_STATION: "#1a2d8a",
    FacilityKind.LAKE: "#7ec8e3",
    FacilityKind.ROAD: "#8a8a8a",
}
GRASS_COLOR = "#3f7d3a"
FIRE_COLOR = "#d42a1e"


@dataclass(frozen=True)
class GridWorld:
    """World extent and episode length."""

    size_cells: int
    duration: int  # seconds

    @classmethod
    def from_units(cls, size_units: int, duration: int) -> "GridWorld":
        if size_units not in WORLD_SIZES:
            raise ValueError(f"world size must be one of {WORLD_SIZES}, got {size_units}")
        if duration not in DURATIONS:
            raise ValueError(f"duration must be one of {DURATIONS}, got {duration}")
        return cls(size_cells=int(size_units / CELL_UNITS), duration=duration)

    @property
    def size_units(self) -> float:
        return self.size_cells * CELL_UNITS


def cell_name(col: int, row: int) -> str:
    """Chess-style cell label; col 0 row 0 -> 'A-01'."""
    if col < 0 or col > 25 or row < 0:
        raise ValueError(f"cell ({col}, {row}) not nameable")
    return f"{chr(ord('A') + col)}-{row + 1:02d}"


def parse_cell_name(name: str, world: GridWorld) -> tuple[int, int]:
    """Inverse of cell_name, bounds-checked against the grid."""
    m = _CELL_RE.match(name)
    if not m:
        raise ValueError(f"malformed cell name {name!r}")
    col = ord(m.group(1)) - ord("A")
    row = int(m.group(2)) - 1
    if col >= world.size_cells or row >= world.size_cells or row < 0:
        raise ValueError(f"cell {name!r} outside {world.size_cells}x{world.size_cells} grid")
    return col, row


@dataclass(frozen=True)
class Facility:
    kind: FacilityKind
    anchor: tuple[int, int]  # top-left cell (col, row)
    orientation: str | None = None  # base only: "horizontal" | "vertical"

    @property
    def footprint(self) -> tuple[int, int]:
        if self.kind is FacilityKind.BASE:
            return BASE_FOOTPRINTS[self.orientation or "vertical"]
        return _FOOTPRINTS[self.kind]

    @property
    def penalty_coefficient(self) -> float:
        return PENALTY_COEFFICIENTS[self.kind]

    def cells(self) -> list[tuple[int, int]]:
        w, h = self.footprint
        c0, r0 = self.anchor
        return [(c0 + dc, r0 + dr) for dr in range(h) for dc in range(w)]

    def rect_units(self) -> tuple[float, float, float, float]:
        """(x0, y0, x1, y1) closed rectangle in distance units."""
        w, h = self.footprint
        c0, r0 = self.anchor
        return (c0 * CELL_UNITS, r0 * CELL_UNITS,
                (c0 + w) * CELL_UNITS, (r0 + h) * CELL_UNITS)

    def contains(self, x: float, y: float) -> bool:
        x0, y0, x1, y1 = self.rect_units()
        return x0 <= x <= x1 and y0 <= y <= y1


@dataclass(frozen=True)
class FireRegion:
    """One seeded ignition area occupying a single placement cell."""

    cell: tuple[int, int]
    num_firefronts: int
    ignition_delay: float  # seconds from episode start
    fuel: float  # nominal spread rate, distance units per second
    wind_speed: float  # m/s
    wind_azimuth: float  # degrees clockwise from +Y

    def rect_units(self) -> tuple[float, float, float, float]:
        c, r = self.cell
        return (c * CELL_UNITS, r * CELL_UNITS,
                (c + 1) * CELL_UNITS, (r + 1) * CELL_UNITS)


@dataclass
class Violation:
    code: str
    message: str


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, code: str, message: str) -> None:
        self.violations.append(Violation(code, message))

    def codes(self) -> list[str]:
        return [v.code for v in self.violations]


def _in_grid(world: GridWorld, anchor: tuple[int, int], footprint: tuple[int, int]) -> bool:
    c, r = anchor
    w, h = footprint
    return c >= 0 and r >= 0 and c + w <= world.size_cells and r + h <= world.size_cells


def _base_on_edge(world: GridWorld, fac: Facility) -> bool:
    c, r = fac.anchor
    w, h = fac.footprint
    if fac.orientation == "horizontal":
        return r == 0 or r + h == world.size_cells
    return c == 0 or c + w == world.size_cells


def validate_layout(world: GridWorld, facilities: list[Facility],
                    regions: list[FireRegion]) -> ValidationReport:
    """Static layout checks: counts, bounds, edge rule, overlaps."""
    report = ValidationReport()

    bases = [f for f in facilities if f.kind is FacilityKind.BASE]
    if len(bases) != 1:
        report.add("base_count", f"exactly one base required, found {len(bases)}")
    for kind in FacilityKind:
        if kind is FacilityKind.BASE:
            continue
        n = sum(1 for f in facilities if f.kind is kind)
        if n > 5:
            report.add("facility_count", f"at most 5 {kind.value} allowed, found {n}")
    if not 1 <= len(regions) <= 5:
        report.add("region_count", f"1 to 5 fire regions required, found {len(regions)}")

    occupied: dict[tuple[int, int], int] = {}
    for i, fac in enumerate(facilities):
        if fac.kind is FacilityKind.BASE and fac.orientation not in BASE_FOOTPRINTS:
            report.add("base_orientation", f"facility {i}: unknown base orientation {fac.orientation!r}")
            continue
        if not _in_grid(world, fac.anchor, fac.footprint):
            report.add("out_of_bounds", f"facility {i} ({fac.kind.value}) exceeds the grid at {fac.anchor}")
            continue
        if fac.kind is FacilityKind.BASE and not _base_on_edge(world, fac):
            report.add("base_edge", f"{fac.orientation} base must touch the matching world edge, anchor {fac.anchor}")
        for cell in fac.cells():
            if cell in occupied:
                report.add("facility_overlap",
                           f"facility {i} ({fac.kind.value}) overlaps facility {occupied[cell]} at cell {cell}")
                break
            occupied[cell] = i

    for j, region in enumerate(regions):
        c, r = region.cell
        if not (0 <= c < world.size_cells and 0 <= r < world.size_cells):
            report.add("out_of_bounds", f"fire region {j} outside the grid at {region.cell}")
        elif (c, r) in occupied:
            report.add("region_on_facility",
                       f"fire region {j} sits on facility {occupied[(c, r)]} at cell {region.cell}")

    return report


def facility_at(facilities: list[Facility], x: float, y: float,
                world: GridWorld) -> Facility | None:
    """Facility whose closed footprint contains the point, or None.

    Points on a shared boundary resolve to the lexicographically smallest
    anchor. Out-of-bounds points are a caller bug.
    """
    if not (0.0 <= x <= world.size_units and 0.0 <= y <= world.size_units):
        raise ValueError(f"point ({x}, {y}) outside world bounds")
    for fac in sorted(facilities, key=lambda f: f.anchor):
        if fac.contains(x, y):
            return fac
    return None
