import type { MoveEntry, MoveList, SessionState, Vec } from "./api";

export class MalformedStateError extends Error {}

export interface CircleGlyph {
  x: number;
  y: number;
  link: "prev" | "next";
}

export interface BarGlyph {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

export interface Floor {
  z: number;
  cells: { x: number; y: number }[];
  circles: CircleGlyph[];
  bars: BarGlyph[];
}

export interface Extent {
  minX: number;
  maxX: number;
  minY: number;
  maxY: number;
}

export interface ViewModel {
  floors: Floor[];
  extent: Extent;
  twist: number;
  historyLength: number;
  frozen: boolean;
  moves: MoveEntry[];
}

function isVec(value: unknown): value is Vec {
  return (
    Array.isArray(value) &&
    value.length === 3 &&
    value.every((n) => typeof n === "number" && Number.isInteger(n))
  );
}

function checkState(state: SessionState): void {
  const cubes = state?.region?.cubes;
  const dominoes = state?.tiling?.dominoes;
  if (!Array.isArray(cubes) || cubes.length === 0 || !cubes.every(isVec)) {
    throw new MalformedStateError("region must list [x, y, z] cubes");
  }
  const pairOk = (d: unknown) => Array.isArray(d) && d.length === 2 && d.every(isVec);
  if (!Array.isArray(dominoes) || !dominoes.every(pairOk)) {
    throw new MalformedStateError("tiling must list [white, black] cube pairs");
  }
  if (typeof state.twist !== "number" || !Array.isArray(state.history)) {
    throw new MalformedStateError("state needs a twist number and a history list");
  }
}

/**
 * Project the server state onto floors along the z axis, left to right in
 * increasing z. Dominoes inside one floor become bars; a domino joining two
 * floors becomes a circle on each: hollow on the lower floor (its partner
 * lives one floor to the right), filled on the upper (partner to the left).
 */
export function buildViewModel(state: SessionState, moves: MoveList): ViewModel {
  checkState(state);
  const flips = moves?.flips;
  const trits = moves?.trits;
  if (!Array.isArray(flips) || !Array.isArray(trits)) {
    throw new MalformedStateError("moves must list flips and trits");
  }

  const cubes = state.region.cubes;
  const extent: Extent = {
    minX: Math.min(...cubes.map((c) => c[0])),
    maxX: Math.max(...cubes.map((c) => c[0])),
    minY: Math.min(...cubes.map((c) => c[1])),
    maxY: Math.max(...cubes.map((c) => c[1])),
  };

  const byZ = new Map<number, Floor>();
  const floorOf = (z: number): Floor => {
    let floor = byZ.get(z);
    if (!floor) {
      floor = { z, cells: [], circles: [], bars: [] };
      byZ.set(z, floor);
    }
    return floor;
  };
  for (const [x, y, z] of cubes) {
    floorOf(z).cells.push({ x, y });
  }

  for (const [a, b] of state.tiling.dominoes) {
    if (a[2] === b[2]) {
      floorOf(a[2]).bars.push({ x0: a[0], y0: a[1], x1: b[0], y1: b[1] });
    } else {
      const [low, high] = a[2] < b[2] ? [a, b] : [b, a];
      floorOf(low[2]).circles.push({ x: low[0], y: low[1], link: "next" });
      floorOf(high[2]).circles.push({ x: high[0], y: high[1], link: "prev" });
    }
  }

  const floors = [...byZ.values()].sort((p, q) => p.z - q.z);
  const allMoves = [...flips, ...trits];
  return {
    floors,
    extent,
    twist: state.twist,
    historyLength: state.history.length,
    frozen: allMoves.length === 0,
    moves: allMoves,
  };
}
