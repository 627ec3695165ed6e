import { api, ApiError, type MoveList, type SessionState, type Snapshot } from "./api";
import { buildViewModel, MalformedStateError } from "./model";
import { render, renderErrorBanner, setMoveInputDisabled, showToast } from "./render";

export class App {
  private pending = false;
  private readonly onKeydown = (event: KeyboardEvent): void => {
    if (event.key === "u") void this.undo();
    if (event.key === "r") void this.reset();
  };

  constructor(private root: HTMLElement) {
    document.addEventListener("keydown", this.onKeydown);
  }

  async start(): Promise<void> {
    await this.refresh();
  }

  dispose(): void {
    document.removeEventListener("keydown", this.onKeydown);
  }

  /** Fetch fresh server state and render it; the only way pixels change. */
  private async refresh(): Promise<void> {
    try {
      const [state, moves] = await Promise.all([api.getState(), api.getMoves()]);
      this.show(state, moves);
    } catch (error) {
      renderErrorBanner(this.root, `cannot reach the session API: ${String(error)}`);
    }
  }

  private show(state: SessionState, moves: MoveList): void {
    try {
      const vm = buildViewModel(state, moves);
      render(this.root, vm, {
        onMove: (id) => this.applyMove(id),
        onUndo: () => this.undo(),
        onReset: () => this.reset(),
      });
    } catch (error) {
      if (error instanceof MalformedStateError) {
        renderErrorBanner(this.root, `malformed server state: ${error.message}`);
        return;
      }
      throw error;
    }
  }

  private async perform(call: () => Promise<Snapshot>, conflictNote: string): Promise<void> {
    if (this.pending) return;
    this.pending = true;
    setMoveInputDisabled(this.root, true);
    try {
      const snapshot = await call();
      this.show(snapshot.state, snapshot.moves);
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        await this.refresh();
        showToast(this.root, conflictNote);
      } else {
        renderErrorBanner(this.root, `request failed: ${String(error)}`);
      }
    } finally {
      this.pending = false;
      setMoveInputDisabled(this.root, false);
    }
  }

  applyMove(id: string): Promise<void> {
    return this.perform(() => api.postMove(id), "that move is no longer available");
  }

  undo(): Promise<void> {
    return this.perform(() => api.undo(), "nothing to undo");
  }

  reset(): Promise<void> {
    return this.perform(() => api.reset(), "cannot reset");
  }
}

document.addEventListener("DOMContentLoaded", () => {
  const root = document.getElementById("app");
  if (root) {
    void new App(root).start();
  }
});
