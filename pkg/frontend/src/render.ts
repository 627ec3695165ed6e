import type { MoveEntry } from "./api";
import type { Extent, Floor, ViewModel } from "./model";

export interface Handlers {
  onMove(id: string): void;
  onUndo(): void;
  onReset(): void;
}

const LEGEND =
  "Floors are drawn left to right, one per layer. A filled circle is half of " +
  "a domino whose other half sits in the same cell one floor to the left; a " +
  "hollow circle pairs with the cell one floor to the right. Flat dominoes " +
  "are drawn as bars. Hover a move to see the cells it touches.";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function gridArea(node: HTMLElement, extent: Extent, x: number, y: number): void {
  node.style.gridColumn = String(x - extent.minX + 1);
  node.style.gridRow = String(extent.maxY - y + 1);
}

function renderFloor(floor: Floor, extent: Extent): HTMLElement {
  const section = el("section", "floor");
  section.dataset.z = String(floor.z);
  section.append(el("h2", "floor-title", `floor z=${floor.z}`));

  const grid = el("div", "grid");
  grid.style.gridTemplateColumns = `repeat(${extent.maxX - extent.minX + 1}, var(--cell))`;
  grid.style.gridTemplateRows = `repeat(${extent.maxY - extent.minY + 1}, var(--cell))`;

  for (const { x, y } of floor.cells) {
    const cell = el("div", "cell");
    cell.dataset.x = String(x);
    cell.dataset.y = String(y);
    cell.dataset.z = String(floor.z);
    gridArea(cell, extent, x, y);
    grid.append(cell);
  }
  for (const bar of floor.bars) {
    const node = el("div", "bar");
    node.dataset.x0 = String(bar.x0);
    node.dataset.y0 = String(bar.y0);
    node.dataset.x1 = String(bar.x1);
    node.dataset.y1 = String(bar.y1);
    const c0 = Math.min(bar.x0, bar.x1) - extent.minX + 1;
    const c1 = Math.max(bar.x0, bar.x1) - extent.minX + 1;
    const r0 = extent.maxY - Math.max(bar.y0, bar.y1) + 1;
    const r1 = extent.maxY - Math.min(bar.y0, bar.y1) + 1;
    node.style.gridColumn = `${c0} / ${c1 + 1}`;
    node.style.gridRow = `${r0} / ${r1 + 1}`;
    grid.append(node);
  }
  for (const circle of floor.circles) {
    const node = el("div", `circle ${circle.link === "prev" ? "filled" : "hollow"}`);
    node.dataset.link = circle.link;
    node.dataset.x = String(circle.x);
    node.dataset.y = String(circle.y);
    gridArea(node, extent, circle.x, circle.y);
    grid.append(node);
  }
  section.append(grid);
  return section;
}

function moveLabel(move: MoveEntry): string {
  const sign = move.kind === "trit" ? (move.sign > 0 ? " +1" : " -1") : "";
  return `${move.kind}${sign} @ ${move.anchor.join(",")}`;
}

function renderMoves(vm: ViewModel, scene: HTMLElement, handlers: Handlers): HTMLElement {
  const aside = el("aside", "moves");
  aside.dataset.role = "moves";
  aside.append(el("h2", "moves-title", "moves"));
  const highlight = (move: MoveEntry, on: boolean) => {
    for (const [x, y, z] of move.cells) {
      const cell = scene.querySelector<HTMLElement>(
        `.cell[data-x="${x}"][data-y="${y}"][data-z="${z}"]`,
      );
      cell?.classList.toggle("highlight", on);
    }
  };
  for (const move of vm.moves) {
    const button = el("button", `move-button ${move.kind}`, moveLabel(move));
    button.dataset.moveId = move.id;
    button.dataset.kind = move.kind;
    button.addEventListener("mouseenter", () => highlight(move, true));
    button.addEventListener("mouseleave", () => highlight(move, false));
    button.addEventListener("click", () => handlers.onMove(move.id));
    aside.append(button);
  }
  return aside;
}

export function render(root: HTMLElement, vm: ViewModel, handlers: Handlers): void {
  root.replaceChildren();

  const header = el("header", "topbar");
  header.append(el("h1", "title", "dominotwist explorer"));
  const readout = el("div", "readout");
  const twist = el("span", "twist");
  twist.dataset.role = "twist";
  twist.textContent = String(vm.twist);
  readout.append(el("span", "label", "twist"), twist);
  const history = el("span", "history");
  history.dataset.role = "history";
  history.textContent = String(vm.historyLength);
  readout.append(el("span", "label", "history"), history);
  if (vm.frozen) {
    const badge = el("span", "frozen-badge", "frozen tiling");
    badge.dataset.role = "frozen-badge";
    readout.append(badge);
  }
  header.append(readout);

  const controls = el("div", "controls");
  const undoButton = el("button", "control-button", "undo (u)");
  undoButton.dataset.role = "undo";
  undoButton.addEventListener("click", () => handlers.onUndo());
  const resetButton = el("button", "control-button", "reset (r)");
  resetButton.dataset.role = "reset";
  resetButton.addEventListener("click", () => handlers.onReset());
  controls.append(undoButton, resetButton);
  header.append(controls);

  const floors = el("div", "floors");
  floors.dataset.role = "floors";
  for (const floor of vm.floors) {
    floors.append(renderFloor(floor, vm.extent));
  }

  const scene = el("div", "scene");
  scene.append(floors, renderMoves(vm, floors, handlers));

  const toast = el("div", "toast");
  toast.dataset.role = "toast";

  root.append(header, el("p", "legend", LEGEND), scene, toast);
}

export function renderErrorBanner(root: HTMLElement, message: string): void {
  root.replaceChildren();
  const banner = el("div", "error-banner", message);
  banner.dataset.role = "error-banner";
  root.append(banner);
}

export function setMoveInputDisabled(root: HTMLElement, disabled: boolean): void {
  root.classList.toggle("pending", disabled);
  for (const button of root.querySelectorAll<HTMLButtonElement>("button")) {
    button.disabled = disabled;
  }
}

export function showToast(root: HTMLElement, message: string): void {
  const toast = root.querySelector<HTMLElement>('[data-role="toast"]');
  if (!toast) return;
  toast.textContent = message;
  toast.classList.add("visible");
  window.setTimeout(() => toast.classList.remove("visible"), 2500);
}
