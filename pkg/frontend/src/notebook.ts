/** Design notebook panel: saved components, newest first. */

import type { NotebookEntry } from "./types";

export interface NotebookCallbacks {
  onOpen: (componentId: string) => void;
  onRemove: (entryId: string) => void;
}

export function renderNotebook(
  entries: NotebookEntry[],
  callbacks: NotebookCallbacks,
): HTMLElement {
  const panel = document.createElement("div");
  panel.className = "notebook";
  const heading = document.createElement("h3");
  heading.textContent = `design notebook (${entries.length})`;
  panel.appendChild(heading);
  if (entries.length === 0) {
    const empty = document.createElement("p");
    empty.className = "notebook-empty";
    empty.textContent = "nothing saved yet — use Share on a component";
    panel.appendChild(empty);
    return panel;
  }
  const list = document.createElement("ul");
  for (const entry of entries) {
    const li = document.createElement("li");
    li.setAttribute("data-entry-id", entry.entry_id);
    const open = document.createElement("a");
    open.href = "#";
    open.textContent = entry.component_id;
    open.addEventListener("click", (event) => {
      event.preventDefault();
      callbacks.onOpen(entry.component_id);
    });
    const note = document.createElement("span");
    note.textContent = entry.note ? ` — ${entry.note}` : "";
    const remove = document.createElement("button");
    remove.textContent = "remove";
    remove.addEventListener("click", () => callbacks.onRemove(entry.entry_id));
    li.append(open, note, remove);
    list.appendChild(li);
  }
  panel.appendChild(list);
  return panel;
}
