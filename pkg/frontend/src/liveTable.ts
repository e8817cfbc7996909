import { ApiClient, LiveUpdatePayload } from "./api.js";
import { formatSl, formatSlOrNil } from "./format.js";

export const LIVE_TABLE_COLUMNS = [
  "S.No",
  "Health District Name",
  "# of Identified Case for Today",
  "Date & Time of Last Identified Case",
  "# of Risk Places Identified for Last 10 Days",
  "Date & Time of Last Identified Risk Place",
];

export const OFFLINE_MESSAGE = "Server unreachable - showing the last received data";

/** Render the public live table; counts verbatim, timestamps SL / Nil. */
export function renderLiveTable(root: HTMLElement, payload: LiveUpdatePayload): void {
  root.innerHTML = "";
  const title = document.createElement("h2");
  title.className = "live-title";
  title.textContent = `Dengue Live Update: ${formatSl(payload.generated_at)}`;
  root.appendChild(title);

  const table = document.createElement("table");
  table.className = "live-table";
  const head = table.createTHead().insertRow();
  for (const column of LIVE_TABLE_COLUMNS) {
    const th = document.createElement("th");
    th.textContent = column;
    head.appendChild(th);
  }
  const body = table.createTBody();
  payload.rows.forEach((row, index) => {
    const tr = body.insertRow();
    tr.dataset.district = row.district;
    const cells = [
      String(index + 1),
      row.district,
      String(row.cases_today),
      formatSlOrNil(row.last_case_at),
      String(row.risk_places_10d),
      formatSlOrNil(row.last_risk_at),
    ];
    for (const text of cells) {
      tr.insertCell().textContent = text;
    }
  });
  root.appendChild(table);
}

/** Bounded-staleness polling; one request in flight at a time. On failure
 * an offline banner appears and the last rendered data stays put. */
export class LiveTablePoller {
  private timer: ReturnType<typeof setInterval> | null = null;
  private inFlight = false;
  private banner: HTMLElement;
  private tableRoot: HTMLElement;
  lastPayload: LiveUpdatePayload | null = null;

  constructor(
    private api: ApiClient,
    root: HTMLElement,
    private intervalMs: number,
  ) {
    root.innerHTML = "";
    this.banner = document.createElement("div");
    this.banner.className = "offline-banner";
    this.banner.textContent = OFFLINE_MESSAGE;
    this.banner.hidden = true;
    this.tableRoot = document.createElement("div");
    root.appendChild(this.banner);
    root.appendChild(this.tableRoot);
  }

  start(): void {
    void this.refresh();
    this.timer = setInterval(() => void this.refresh(), this.intervalMs);
  }

  stop(): void {
    if (this.timer !== null) clearInterval(this.timer);
    this.timer = null;
  }

  async refresh(): Promise<void> {
    if (this.inFlight) return;
    this.inFlight = true;
    try {
      const payload = await this.api.liveUpdate();
      this.lastPayload = payload;
      renderLiveTable(this.tableRoot, payload);
      this.banner.hidden = true;
    } catch {
      this.banner.hidden = false;
    } finally {
      this.inFlight = false;
    }
  }
}
