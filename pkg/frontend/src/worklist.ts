import { ApiClient, WorklistPayload, WorklistRow } from "./api.js";
import { buildTravelWizard } from "./wizard.js";

/** PHI work view: per-area summary blocks plus the case detail table, with
 * an Attend action that opens the travel-history wizard and the outcome
 * submission for the selected case. Every cell is verbatim API data. */

export const WORKLIST_COLUMNS = [
  "S.No",
  "OPD No",
  "Ward No",
  "Ward Ticket No",
  "Title",
  "First Name",
  "Last Name",
  "Age",
  "Gender",
  "Door No",
  "Street Name",
  "Land Type",
  "GN Division Name",
  "Mobile",
  "Employment",
  "Case Register Date",
  "Case Attention",
];

export interface WorklistDeps {
  api: ApiClient;
  suggestDebounceMs?: number;
  onChanged?: () => void;
}

export async function renderWorklist(root: HTMLElement, deps: WorklistDeps): Promise<WorklistPayload> {
  const payload = await deps.api.worklist();
  root.innerHTML = "";
  const heading = document.createElement("h2");
  heading.textContent = "Dengue Patient Information in Your Area";
  root.appendChild(heading);

  for (const area of payload.areas) {
    const block = document.createElement("section");
    block.className = "worklist-area";
    block.dataset.phiArea = area.phi_area;
    const summary = document.createElement("ul");
    summary.className = "area-summary";
    const lines = [
      ["PHI Area", area.phi_area],
      ["MOH Area", area.moh_area],
      ["Health District", area.district],
      ["Number of Patients Identified", String(area.count)],
    ];
    for (const [label, value] of lines) {
      const item = document.createElement("li");
      item.textContent = `${label}: `;
      const strong = document.createElement("strong");
      strong.textContent = value;
      strong.dataset.summary = label;
      item.appendChild(strong);
      summary.appendChild(item);
    }
    block.appendChild(summary);

    if (area.rows.length > 0) {
      block.appendChild(buildRowsTable(area.rows, block, deps));
    }
    root.appendChild(block);
  }
  return payload;
}

function buildRowsTable(rows: WorklistRow[], block: HTMLElement, deps: WorklistDeps): HTMLTableElement {
  const table = document.createElement("table");
  table.className = "worklist-table";
  const head = table.createTHead().insertRow();
  for (const column of WORKLIST_COLUMNS) {
    const th = document.createElement("th");
    th.textContent = column;
    head.appendChild(th);
  }
  const body = table.createTBody();
  for (const row of rows) {
    const tr = body.insertRow();
    tr.dataset.caseId = row.case_id;
    const cells = [
      String(row.s_no),
      row.opd_no,
      row.ward_no,
      row.ward_ticket_no,
      row.title,
      row.first_name,
      row.last_name,
      row.age,
      row.gender,
      row.door_no,
      row.street,
      row.land_type,
      row.gn_division,
      row.mobile,
      row.employment,
      row.register_date_display,
    ];
    for (const text of cells) {
      tr.insertCell().textContent = text;
    }
    const actionCell = tr.insertCell();
    if (row.attention === "Attend" && row.order_id) {
      const button = document.createElement("button");
      button.type = "button";
      button.className = "attend-button";
      button.textContent = "Attend";
      button.addEventListener("click", () => openAttendPanel(block, row, deps));
      actionCell.appendChild(button);
    } else {
      actionCell.textContent = row.attention;
    }
  }
  return table;
}

function openAttendPanel(block: HTMLElement, row: WorklistRow, deps: WorklistDeps): void {
  const existing = block.querySelector(".attend-panel");
  if (existing) existing.remove();
  const panel = document.createElement("div");
  panel.className = "attend-panel";
  panel.dataset.caseId = row.case_id;
  const heading = document.createElement("h3");
  heading.textContent =
    `Attending case ${row.case_id}: ${row.title} ${row.first_name} ${row.last_name} ` +
    `(registered ${row.register_date_display})`;
  panel.appendChild(heading);

  const wizardRoot = document.createElement("div");
  panel.appendChild(wizardRoot);
  // the wizard reports its own result; only the outcome closes the panel
  buildTravelWizard(wizardRoot, {
    api: deps.api,
    caseId: row.case_id,
    registeredAtIso: row.registered_at,
    suggestDebounceMs: deps.suggestDebounceMs,
  });

  const outcome = document.createElement("div");
  outcome.className = "outcome-controls";
  const label = document.createElement("span");
  label.textContent = "Investigation outcome: ";
  outcome.appendChild(label);
  for (const [value, text] of [
    ["confirmed", "Confirm dengue"],
    ["not_dengue", "Not dengue"],
  ] as const) {
    const button = document.createElement("button");
    button.type = "button";
    button.dataset.outcome = value;
    button.textContent = text;
    button.addEventListener("click", () => {
      void deps.api
        .attend(row.order_id as string, value)
        .then(() => {
          panel.remove();
          deps.onChanged?.();
        })
        .catch((err: unknown) => {
          status.textContent = err instanceof Error ? err.message : "failed";
        });
    });
    outcome.appendChild(button);
  }
  const status = document.createElement("p");
  status.className = "attend-status";
  outcome.appendChild(status);
  panel.appendChild(outcome);
  block.appendChild(panel);
}
