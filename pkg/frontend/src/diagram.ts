// Context-map panel: one card per post-merge entity inside a horizontally
// scrollable strip, with the relationship list rendered underneath.

import type { ContextMapModel } from "./types";

export function renderContextMap(container: HTMLElement, model: ContextMapModel): void {
  container.replaceChildren();
  const strip = document.createElement("div");
  strip.className = "diagram-strip";
  for (const block of model.classes) {
    const card = document.createElement("div");
    card.className = "class-card";
    const title = document.createElement("div");
    title.className = "class-card-title";
    title.textContent = block.name;
    card.appendChild(title);
    for (const field of block.fields) {
      const row = document.createElement("div");
      row.className = "class-card-field";
      row.textContent = `${field.type} ${field.name}`;
      card.appendChild(row);
    }
    strip.appendChild(card);
  }
  container.appendChild(strip);

  const relations = document.createElement("div");
  relations.className = "relation-list";
  for (const relation of model.relations) {
    const row = document.createElement("div");
    row.textContent = `${relation.source} → ${relation.target} (${relation.label})`;
    relations.appendChild(row);
  }
  container.appendChild(relations);
}
