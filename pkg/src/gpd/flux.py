"""Flux variables on grid edges, component equations, and dream reconstruction.

Each grid edge carries a formal flux: a set of markers (r, j), one marker
standing for the product X_rj * Y_jr of matrix entries.  Fluxes start at
zero on the outer W/E/S boundary edges and grow by the marker of each
square they cross, which makes a conservation law hold at every square.

A pipe dream turns the formal fluxes into labels: an edge traversed by the
pipe labeled i carries t_i, every other edge carries 0.  Together with the
vanishing X and Y entries read off the straight and blank tiles, these
labels are the defining data of the dream's degeneration component; the
labeling is faithful enough that the dream can be rebuilt from it by
joining, in every square, the edges that carry the same nonzero flux.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

from . import _packed, grid
from .grid import PipeDream, Tile, pipe_numbering, tile_weight, trace_pipes, weight
from .poly import Polynomial
from .schubert import CheckReport


class EdgeId(NamedTuple):
    """V(i, j): vertical edge of row i at position j in [0..n] (0 = West
    boundary).  H(i, j): horizontal edge in column j between rows i and
    i+1, with i = 0 the North boundary and i = m the South one."""

    kind: str
    row: int
    col: int

    def __str__(self) -> str:
        return f"{self.kind}({self.row},{self.col})"


Marker = tuple[int, int]  # (r, j) standing for X_rj * Y_jr
FluxExpr = frozenset[Marker]


def all_edges(m: int, n: int) -> list[EdgeId]:
    edges = [EdgeId("V", i, j) for i in range(1, m + 1) for j in range(n + 1)]
    edges += [EdgeId("H", i, j) for i in range(m + 1) for j in range(1, n + 1)]
    return edges


def flux_grid(m: int, n: int, beta: str) -> dict[EdgeId, FluxExpr]:
    """Formal flux of every edge for the given shape and hybridization.

    Vertical fluxes in a W row sum the markers East of the edge; in an E
    row, the markers up to and including the edge's column.  Horizontal
    fluxes sum the markers of the column below the edge.  The entering side
    edge of row i therefore carries the full flux of its pipe and the far
    side carries zero.
    """
    grid.check_beta(beta, m)
    phi = pipe_numbering(beta)
    out: dict[EdgeId, FluxExpr] = {}
    for i in range(1, m + 1):
        p = phi[i - 1]
        for j in range(n + 1):
            if beta[i - 1] == "W":
                markers = {(p, jp) for jp in range(j + 1, n + 1)}
            else:
                markers = {(p, jp) for jp in range(1, j + 1)}
            out[EdgeId("V", i, j)] = frozenset(markers)
    for i in range(m + 1):
        for j in range(1, n + 1):
            out[EdgeId("H", i, j)] = frozenset(
                (phi[k - 1], j) for k in range(i + 1, m + 1)
            )
    return out


def format_flux(expr: Iterable[Marker]) -> str:
    """Render a flux as x<r><j>y<j><r>+... with markers sorted; empty is 0."""
    parts = [f"x{r}{j}y{j}{r}" for r, j in sorted(expr)]
    return "+".join(parts) if parts else "0"


def conservation_check(m: int, n: int, beta: str) -> CheckReport:
    """Verify flux conservation at every square, as Z-linear combinations.

    W rows satisfy West + South = East + North and E rows the mirror
    East + South = West + North; both sides are compared as multisets of
    markers.
    """
    report = CheckReport(f"flux conservation ({m},{n},{beta})")
    fluxes = flux_grid(m, n, beta)

    def count(*exprs: FluxExpr) -> dict[Marker, int]:
        acc: dict[Marker, int] = {}
        for e in exprs:
            for mk in e:
                acc[mk] = acc.get(mk, 0) + 1
        return acc

    for i in range(1, m + 1):
        for j in range(1, n + 1):
            west = fluxes[EdgeId("V", i, j - 1)]
            east = fluxes[EdgeId("V", i, j)]
            north = fluxes[EdgeId("H", i - 1, j)]
            south = fluxes[EdgeId("H", i, j)]
            if beta[i - 1] == "W":
                lhs, rhs = count(west, south), count(east, north)
            else:
                lhs, rhs = count(east, south), count(west, north)
            if lhs != rhs:
                report.fail(f"square ({i},{j}) violates conservation")
    return report


def dream_flux_labels(d: PipeDream) -> dict[EdgeId, int]:
    """Label every edge with its pipe (t_i as the integer i) or 0.

    North boundary labels realize the connectivity: H(0, j) carries i
    exactly when pipe i exits at column j.
    """
    labels = {e: 0 for e in all_edges(d.m, d.n)}
    for pipe, path in trace_pipes(d).items():
        for edge in path:
            labels[EdgeId(*edge)] = pipe
    return labels


@dataclass
class EquationSet:
    """Defining data of one degeneration component.

    zero_x holds pairs (r, j) with X_rj = 0, zero_y pairs (j, r) with
    Y_jr = 0, and flux maps every edge to its label (0 or the pipe number).
    Exactly n - 1 of the implied equations per row are independent: one per
    column except where the row's own pipe exits North.
    """

    m: int
    n: int
    beta: str
    pi: tuple[int, ...]
    zero_x: frozenset[tuple[int, int]]
    zero_y: frozenset[tuple[int, int]]
    flux: dict[EdgeId, int]

    def independent_count(self) -> int:
        elbows = self.m * self.n - len(self.zero_x) - len(self.zero_y)
        return len(self.zero_x) + len(self.zero_y) + elbows - self.m


def variety_equations(d: PipeDream) -> EquationSet:
    """Equations of the component attached to a dream.

    Straight tiles in W rows and blank tiles in E rows kill an X entry;
    blank tiles in W rows and straight tiles in E rows kill a Y entry;
    every edge's flux is asserted equal to its pipe label.
    """
    phi = pipe_numbering(d.beta)
    zero_x: set[tuple[int, int]] = set()
    zero_y: set[tuple[int, int]] = set()
    for i in range(1, d.m + 1):
        p = phi[i - 1]
        west_row = d.row_type(i) == "W"
        for j in range(1, d.n + 1):
            t = d.tile(i, j)
            if t in grid.ELBOWS:
                continue
            x_vanishes = (t in grid.STRAIGHTS) == west_row
            if x_vanishes:
                zero_x.add((p, j))
            else:
                zero_y.add((j, p))
    pi, _ = grid.connectivity(d)
    return EquationSet(
        m=d.m,
        n=d.n,
        beta=d.beta,
        pi=pi,
        zero_x=frozenset(zero_x),
        zero_y=frozenset(zero_y),
        flux=dream_flux_labels(d),
    )


def flux_system_rank(eqs: EquationSet) -> int:
    """Rank over Q of the linear system behind an equation set.

    Variables are the mn markers and the m pipe fluxes t_i; equations are
    the per-edge assertions (formal flux = label) plus one vanishing marker
    per killed X or Y entry.  For equations coming from a dream the rank is
    mn: every marker is pinned to 0 or to some t_i.
    """
    m, n = eqs.m, eqs.n
    fluxes = flux_grid(m, n, eqs.beta)
    nvars = m * n + m
    midx = {(r, j): (r - 1) * n + (j - 1) for r in range(1, m + 1) for j in range(1, n + 1)}
    rows: list[list[Fraction]] = []
    for edge, expr in fluxes.items():
        row = [Fraction(0)] * nvars
        for mk in expr:
            row[midx[mk]] += 1
        label = eqs.flux[edge]
        if label:
            row[m * n + label - 1] -= 1
        if any(row):
            rows.append(row)
    for r, j in eqs.zero_x:
        row = [Fraction(0)] * nvars
        row[midx[(r, j)]] = Fraction(1)
        rows.append(row)
    for j, r in eqs.zero_y:
        row = [Fraction(0)] * nvars
        row[midx[(r, j)]] = Fraction(1)
        rows.append(row)
    rank = 0
    for col in range(nvars):
        pivot = next((k for k in range(rank, len(rows)) if rows[k][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank][col]
        for k in range(len(rows)):
            if k != rank and rows[k][col]:
                factor = rows[k][col] / lead
                rows[k] = [a - factor * b for a, b in zip(rows[k], rows[rank])]
        rank += 1
    return rank


def exit_elbow_columns(d: PipeDream) -> dict[int, int]:
    """Column, per row, of the elbow where that row's entering pipe turns North."""
    out: dict[int, int] = {}
    for pipe, path in trace_pipes(d).items():
        first_h = next(e for e in path if e[0] == "H")
        row = first_h[1] + 1
        out[row] = first_h[2]
    return out


def component_class(d: PipeDream) -> Polynomial:
    """Equivariant class of the dream's component.

    Computed two ways, which must agree: the dream weight divided exactly
    by (A+B)^m, and the product of tile weights skipping, in each row, the
    elbow where the row's own pipe exits North.  Agreement is checked
    multiplicatively, which also certifies the division is exact.
    """
    full_weight = weight(d)
    phi = pipe_numbering(d.beta)
    skip = exit_elbow_columns(d)
    factors = []
    for i in range(1, d.m + 1):
        for j in range(1, d.n + 1):
            if skip.get(i) == j:
                continue
            factors.append(
                tile_weight(d.row_type(i), d.tile(i, j), phi[i - 1], j, d.m, d.n)
            )
    product = _packed.product(d.m, d.n, factors)
    if _packed.product(d.m, d.n, [product, grid._ab_power(d.m, d.n, d.m)]) != full_weight:
        raise RuntimeError("component class routes disagree; tracing bug")
    return product


_W_TILE_PAIRS: dict[Tile, tuple[frozenset[str], ...]] = {
    Tile.BLANK: (),
    Tile.STRAIGHT_H: (frozenset("WE"),),
    Tile.STRAIGHT_V: (frozenset("SN"),),
    Tile.CROSS: (frozenset("WE"), frozenset("SN")),
    Tile.ELBOW_IN: (frozenset("WN"),),
    Tile.ELBOW_OUT: (frozenset("SE"),),
    Tile.DOUBLE_ELBOW: (frozenset("WN"), frozenset("SE")),
}
_E_TILE_PAIRS: dict[Tile, tuple[frozenset[str], ...]] = {
    Tile.BLANK: (),
    Tile.STRAIGHT_H: (frozenset("WE"),),
    Tile.STRAIGHT_V: (frozenset("SN"),),
    Tile.CROSS: (frozenset("WE"), frozenset("SN")),
    Tile.ELBOW_IN: (frozenset("EN"),),
    Tile.ELBOW_OUT: (frozenset("SW"),),
    Tile.DOUBLE_ELBOW: (frozenset("EN"), frozenset("SW")),
}


def _tiles_from_labels(
    m: int, n: int, beta: str, labels: Mapping[EdgeId, object]
) -> PipeDream:
    """Join, per square, the edges carrying equal nonzero labels; pick tiles.

    Labels may be any hashable values (pipe numbers, or reduced flux values
    when rebuilding from a table); 0, None and empty sets count as zero.
    """
    tiles: list[tuple[Tile, ...]] = []
    for i in range(1, m + 1):
        pair_table = _W_TILE_PAIRS if beta[i - 1] == "W" else _E_TILE_PAIRS
        row: list[Tile] = []
        for j in range(1, n + 1):
            at = {
                "W": labels[EdgeId("V", i, j - 1)],
                "E": labels[EdgeId("V", i, j)],
                "S": labels[EdgeId("H", i, j)],
                "N": labels[EdgeId("H", i - 1, j)],
            }
            occupied = frozenset(dir_ for dir_, v in at.items() if v)
            matches = []
            for tile, pairs in pair_table.items():
                edge_set = frozenset().union(*pairs) if pairs else frozenset()
                if edge_set != occupied:
                    continue
                if all(len({at[d] for d in pair}) == 1 for pair in pairs):
                    matches.append(tile)
            if len(matches) != 1:
                raise ValueError(
                    f"square ({i},{j}): labels admit {len(matches)} tiles"
                )
            row.append(matches[0])
        tiles.append(tuple(row))
    d = PipeDream(m, n, beta, tuple(tiles))
    grid.validate(d)
    return d


def reconstruct_dream(eqs: EquationSet) -> PipeDream:
    """Rebuild the dream from its flux labels.

    In every square, edges carrying the same nonzero label are joined by a
    pipe; the unique tile realizing that pairing is selected.  The result
    must validate and reproduce the recorded connectivity.
    """
    d = _tiles_from_labels(eqs.m, eqs.n, eqs.beta, eqs.flux)
    pi, _ = grid.connectivity(d)
    if pi != eqs.pi:
        raise ValueError(f"reconstructed connectivity {pi} != recorded {eqs.pi}")
    return d


def dream_from_flux_table(
    m: int, n: int, beta: str, table: Mapping[EdgeId, FluxExpr]
) -> PipeDream:
    """Rebuild a dream from a (reduced) flux-value table.

    Edges whose entries coincide as nonzero sets are treated as carrying the
    same pipe; empty entries are empty edges.
    """
    labels = {e: (frozenset(v) if v else 0) for e, v in table.items()}
    return _tiles_from_labels(m, n, beta, labels)


def _resolve_rewrites(rewrites: Mapping[Marker, Marker]) -> dict[Marker, Marker]:
    resolved = {}
    for src in rewrites:
        seen = {src}
        dst = rewrites[src]
        while dst in rewrites:
            if dst in seen:
                raise ValueError(f"rewrite cycle through {dst}")
            seen.add(dst)
            dst = rewrites[dst]
        resolved[src] = dst
    return resolved


def reduced_flux_table(
    m: int,
    n: int,
    beta: str,
    zeros: Iterable[tuple[str, int, int]] = (),
    rewrites: Mapping[Marker, Marker] | None = None,
) -> dict[EdgeId, FluxExpr]:
    """Flux table with killed markers deleted and identifications applied.

    ``zeros`` names matrix entries, ('X', r, j) or ('Y', j, r); any marker
    containing a named entry is deleted.  ``rewrites`` maps markers to
    canonical representatives (applied transitively), the way a binomial
    generator identifies two markers.
    """
    killed: set[Marker] = set()
    for kind, a, first in zeros:
        if kind.upper() == "X":
            killed.add((a, first))
        elif kind.upper() == "Y":
            killed.add((first, a))
        else:
            raise ValueError(f"zero entry kind must be X or Y, got {kind!r}")
    mapping = _resolve_rewrites(rewrites or {})
    out = {}
    for edge, expr in flux_grid(m, n, beta).items():
        reduced = {mapping.get(mk, mk) for mk in expr if mk not in killed}
        out[edge] = frozenset(reduced)
    return out
