export type Vec = [number, number, number];

export interface RegionJson {
  cubes: Vec[];
}

export interface TilingJson {
  dominoes: [Vec, Vec][];
}

export interface HistoryEntry {
  kind: "flip" | "trit";
  anchor: Vec;
  variant: number;
  sign: number;
}

export interface SessionState {
  region: RegionJson;
  tiling: TilingJson;
  twist: number;
  history: HistoryEntry[];
}

export interface MoveEntry {
  id: string;
  kind: "flip" | "trit";
  anchor: Vec;
  variant: number;
  sign: number;
  cells: Vec[];
}

export interface MoveList {
  flips: MoveEntry[];
  trits: MoveEntry[];
}

export interface Snapshot {
  state: SessionState;
  moves: MoveList;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

const BASE = "/api/v1";

async function request<T>(method: string, path: string, body?: unknown): Promise<T> {
  const init: RequestInit = { method };
  if (body !== undefined) {
    init.headers = { "Content-Type": "application/json" };
    init.body = JSON.stringify(body);
  }
  const response = await fetch(BASE + path, init);
  const payload = await response.json();
  if (!response.ok) {
    const message = typeof payload?.error === "string" ? payload.error : response.statusText;
    throw new ApiError(response.status, message);
  }
  return payload as T;
}

export const api = {
  getState: () => request<SessionState>("GET", "/state"),
  getMoves: () => request<MoveList>("GET", "/moves"),
  postMove: (id: string) => request<Snapshot>("POST", "/move", { id }),
  undo: () => request<Snapshot>("POST", "/undo"),
  reset: () => request<Snapshot>("POST", "/reset"),
};
