import { LiveUpdatePayload } from "./api.js";
import { renderLiveTable } from "./liveTable.js";

// Sri Lanka bounding box for the schematic dot map.
const LAT_MIN = 5.5;
const LAT_MAX = 10.2;
const LON_MIN = 79.3;
const LON_MAX = 82.2;
const WIDTH = 300;
const HEIGHT = 420;

/** District table plus schematic centroid dots (no tile maps): districts
 * with activity are highlighted, dot size follows today's case count. */
export function renderMap(root: HTMLElement, payload: LiveUpdatePayload): void {
  root.innerHTML = "";
  const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  svg.setAttribute("class", "district-map");
  for (const row of payload.rows) {
    if (!row.centroid) continue;
    const [lat, lon] = row.centroid;
    const cx = ((lon - LON_MIN) / (LON_MAX - LON_MIN)) * WIDTH;
    const cy = HEIGHT - ((lat - LAT_MIN) / (LAT_MAX - LAT_MIN)) * HEIGHT;
    const active = row.cases_today > 0 || row.risk_places_10d > 0;
    const dot = document.createElementNS("http://www.w3.org/2000/svg", "circle");
    dot.setAttribute("cx", cx.toFixed(1));
    dot.setAttribute("cy", cy.toFixed(1));
    dot.setAttribute("r", String(4 + Math.min(row.cases_today, 8)));
    dot.setAttribute("class", active ? "map-dot active" : "map-dot");
    const title = document.createElementNS("http://www.w3.org/2000/svg", "title");
    title.textContent =
      `${row.district}: ${row.cases_today} case(s) today, ` +
      `${row.risk_places_10d} risk place(s) in 10 days`;
    dot.appendChild(title);
    svg.appendChild(dot);
    const label = document.createElementNS("http://www.w3.org/2000/svg", "text");
    label.setAttribute("x", (cx + 7).toFixed(1));
    label.setAttribute("y", (cy + 3).toFixed(1));
    label.setAttribute("class", "map-label");
    label.textContent = row.district;
    svg.appendChild(label);
  }
  root.appendChild(svg);
  const tableRoot = document.createElement("div");
  renderLiveTable(tableRoot, payload);
  root.appendChild(tableRoot);
}
