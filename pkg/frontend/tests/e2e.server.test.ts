/** End-to-end: a real service process (seeded with the single-case
 * deployment, clock frozen at 2013-12-31 22:45:44 SL) driven through the
 * DOM - sign-in, worklist, the 14-day travel wizard and the hospital
 * registration form - asserting the public live table transitions and
 * that every displayed number equals the corresponding API payload value.
 */
import { execFileSync, spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it, vi } from "vitest";

import { ApiError, type LiveUpdatePayload } from "../src/api.js";
import { startApp, type App } from "../src/app.js";

const PHI_ID = "771023762V";
const ICN_ID = "845612378V";
const FROZEN_CLOCK = "2013-12-31T17:15:44Z"; // 22:45:44 on the SL wall clock

// five distinct non-residence locations (days 1-5), repeats (6-9), home (10-14)
const LOCATIONS = [
  { door_no: "12", street: "Main Street", gn_division: "Navanthurai South" },
  { door_no: "25", street: "Beach Road", gn_division: "Small Bazaar" },
  { door_no: "7", street: "Temple Road", gn_division: "Gurunagar East" },
  { door_no: "31", street: "KKS Road", gn_division: "Chundikul North" },
  { door_no: "48", street: "Navalar Road", gn_division: "Gurunagar West" },
];
const RESIDENCE = { door_no: "878", street: "Hospital Road", gn_division: "Chundikul North" };
const PER_DAY = [...LOCATIONS, ...LOCATIONS.slice(1), ...Array(5).fill(RESIDENCE)];

let proc: ChildProcess;
let base: string;
let dir: string;
let app: App;
let root: HTMLElement;

beforeAll(async () => {
  dir = mkdtempSync(join(tmpdir(), "dw-e2e-"));
  execFileSync("python3", ["-m", "denguewatch.cli", "seed", "--scenario", "figure5", "--dest", dir]);
  proc = spawn(
    "python3",
    ["-m", "denguewatch.cli", "serve", "--config", join(dir, "config.json"),
     "--clock", `manual:${FROZEN_CLOCK}`],
    { env: { ...process.env, DENGUEWATCH_LISTEN: "127.0.0.1:0", PYTHONUNBUFFERED: "1" } },
  );
  base = await new Promise<string>((resolve, reject) => {
    let buffer = "";
    proc.stdout!.on("data", (chunk: Buffer) => {
      buffer += String(chunk);
      const match = buffer.match(/serving on http:\/\/([0-9.:]+)/);
      if (match) resolve(`http://${match[1]}`);
    });
    proc.stderr?.on("data", (chunk: Buffer) => (buffer += String(chunk)));
    proc.on("exit", (code) => reject(new Error(`server exited ${code}: ${buffer}`)));
    setTimeout(() => reject(new Error(`server start timeout: ${buffer}`)), 30000);
  });
  root = document.createElement("div");
  document.body.appendChild(root);
  app = startApp(root, { apiBase: base, pollIntervalMs: 3600_000 });
});

afterAll(() => {
  app?.stop();
  proc?.kill();
  rmSync(dir, { recursive: true, force: true });
});

async function api(path: string, officer?: string): Promise<any> {
  const headers: Record<string, string> = officer ? { "X-Officer-Id": officer } : {};
  const response = await fetch(`${base}${path}`, { headers });
  return response.json();
}

function liveCells(district: string): string[] {
  const row = root.querySelector(`tr[data-district="${district}"]`);
  expect(row, `live row for ${district}`).toBeTruthy();
  return [...row!.querySelectorAll("td")].map((td) => td.textContent ?? "");
}

function expectLiveTableMatchesApi(payload: LiveUpdatePayload): void {
  for (const row of payload.rows) {
    const cells = liveCells(row.district);
    expect(cells[2]).toBe(String(row.cases_today));
    expect(cells[4]).toBe(String(row.risk_places_10d));
    if (row.last_case_at === null) expect(cells[3]).toBe("Nil");
    if (row.last_risk_at === null) expect(cells[5]).toBe("Nil");
  }
}

describe("seeded deployment walked through the DOM", () => {
  it("shows the report-moment live table before any travel history", async () => {
    await vi.waitFor(() => expect(root.querySelector(".live-table")).toBeTruthy());
    expect(liveCells("Jaffna")).toEqual(
      ["9", "Jaffna", "1", "31-12-2013 22:31:33", "0", "Nil"],
    );
    expect(liveCells("Ampara")).toEqual(["1", "Ampara", "0", "Nil", "0", "Nil"]);
    expectLiveTableMatchesApi(await api("/api/live-update"));
  });

  it("signs the field officer in and shows the worklist verbatim", async () => {
    const session = await app.signIn(PHI_ID);
    expect(session.officer.role).toBe("PHI");
    expect(root.querySelector(".role-line")!.textContent).toBe(
      `You are signed in as PHI with the User ID: ${PHI_ID}`,
    );
    const navItems = [...root.querySelectorAll("nav button")].map((b) => b.textContent);
    expect(navItems).toContain("My Area");
    expect(navItems).not.toContain("Register Case");

    app.navigate("My Area");
    await vi.waitFor(() => expect(root.querySelector(".worklist-area")).toBeTruthy());
    const payload = await api("/api/worklist", PHI_ID);
    const blocks = [...root.querySelectorAll<HTMLElement>(".worklist-area")];
    expect(blocks.map((b) => b.dataset.phiArea)).toEqual(["Gurunagar I", "Gurunagar II"]);
    for (const [i, area] of payload.areas.entries()) {
      const count = blocks[i].querySelector(
        '[data-summary="Number of Patients Identified"]',
      )!.textContent;
      expect(count).toBe(String(area.count));
    }
    const row = payload.areas[1].rows[0];
    const domCells = [...root.querySelectorAll(`tr[data-case-id="${row.case_id}"] td`)].map(
      (td) => td.textContent,
    );
    expect(domCells.slice(0, 16)).toEqual([
      String(row.s_no), row.opd_no, row.ward_no, row.ward_ticket_no, row.title,
      row.first_name, row.last_name, row.age, row.gender, row.door_no, row.street,
      row.land_type, row.gn_division, row.mobile, row.employment,
      row.register_date_display,
    ]);
    expect(row.register_date_display).toBe("31-12-2013 22:31:33");
    expect(root.querySelector(".attend-button")).toBeTruthy();
  });

  it("walks the travel wizard and the live table gains the five risk places", async () => {
    (root.querySelector(".attend-button") as HTMLButtonElement).click();
    await vi.waitFor(() => expect(root.querySelector(".travel-wizard")).toBeTruthy());
    const firstLegend = root.querySelector(".wizard-step legend")!.textContent;
    expect(firstLegend).toBe("Day 1: 30-12-2013 22:31:33");

    const input = (day: number, field: string) =>
      root.querySelector<HTMLInputElement>(`input[name="day${day}_${field}"]`)!;
    PER_DAY.forEach((location, index) => {
      const day = index + 1;
      input(day, "door_no").value = location.door_no;
      input(day, "street").value = location.street;
      input(day, "gn_division").value = location.gn_division;
      input(day, "contact_tp").value = `07712345${String(index).padStart(2, "0")}`;
    });
    root.querySelector(".travel-wizard")!.dispatchEvent(new Event("input", { bubbles: true }));
    const submit = root.querySelector<HTMLButtonElement>(".wizard-submit")!;
    await vi.waitFor(() => expect(submit.disabled).toBe(false));
    submit.click();
    await vi.waitFor(() =>
      expect(root.querySelector(".wizard-status")!.textContent).toContain("Recorded 14 day(s)"),
    );
    expect(root.querySelector(".wizard-status")!.textContent).toContain("5 risk place(s)");

    app.navigate("Home");
    await vi.waitFor(() => expect(root.querySelector(".live-table")).toBeTruthy());
    expect(liveCells("Jaffna")).toEqual(
      ["9", "Jaffna", "1", "31-12-2013 22:31:33", "5", "30-12-2013 22:31:33"],
    );
    const payload = await api("/api/live-update");
    expectLiveTableMatchesApi(payload);
    const jaffna = payload.rows.find((r: { district: string }) => r.district === "Jaffna");
    expect(jaffna.risk_places_10d).toBe(5);
  });

  it("records the outcome from the attend panel", async () => {
    app.navigate("My Area");
    await vi.waitFor(() => expect(root.querySelector(".attend-button")).toBeTruthy());
    (root.querySelector(".attend-button") as HTMLButtonElement).click();
    await vi.waitFor(() => expect(root.querySelector(".outcome-controls")).toBeTruthy());
    (root.querySelector('button[data-outcome="confirmed"]') as HTMLButtonElement).click();
    await vi.waitFor(async () => {
      const payload = await api("/api/worklist", PHI_ID);
      expect(payload.areas[1].count).toBe(0); // confirmed cases leave the worklist
    });
  });

  it("registers a new case from the hospital form and the live table follows", async () => {
    app.signOut();
    await app.signIn(ICN_ID);
    app.navigate("Register Case");
    await vi.waitFor(() => expect(root.querySelector(".registration-form")).toBeTruthy());
    const form = root.querySelector<HTMLFormElement>(".registration-form")!;
    const set = (name: string, value: string) => {
      const control = form.elements.namedItem(name) as HTMLInputElement | HTMLSelectElement;
      if (control instanceof HTMLSelectElement &&
          !control.querySelector(`option[value="${value}"]`)) {
        const option = document.createElement("option");
        option.value = value;
        control.appendChild(option);
      }
      control.value = value;
    };
    set("opd_no", "055");
    set("ward_no", "2");
    set("ward_ticket_no", "055_2");
    set("title", "mr");
    set("first_name", "Saman");
    set("last_name", "Perera");
    set("age_value", "34");
    set("age_unit", "years");
    set("gender", "male");
    set("door_no", "19");
    set("street", "Main Street");
    set("land_type", "government");
    set("gn_division", "Fort");
    set("mobile", "0712345678");
    form.dispatchEvent(new Event("input", { bubbles: true }));
    const submit = form.querySelector<HTMLButtonElement>("button[type=submit]")!;
    await vi.waitFor(() => expect(submit.disabled).toBe(false));
    form.dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
    await vi.waitFor(() =>
      expect(form.querySelector(".form-status")!.textContent).toContain("Registered case"),
    );

    app.navigate("Home");
    await vi.waitFor(() => {
      expect(root.querySelector(".live-table")).toBeTruthy();
      expect(liveCells("Colombo")[2]).toBe("1");
    });
    const payload = await api("/api/live-update");
    expectLiveTableMatchesApi(payload);
    const colombo = payload.rows.find((r: { district: string }) => r.district === "Colombo");
    expect(liveCells("Colombo")[2]).toBe(String(colombo.cases_today));
    expect(liveCells("Colombo")[3]).toBe("31-12-2013 22:45:44"); // frozen server clock
  });

  it("rejects a forged role server-side even though the nav hides it", async () => {
    app.signOut();
    await app.signIn(PHI_ID);
    // PHI never sees the registration page, and the server refuses anyway
    const navItems = [...root.querySelectorAll("nav button")].map((b) => b.textContent);
    expect(navItems).not.toContain("Register Case");
    await expect(
      app.api.registerCase({ opd_no: "x" }),
    ).rejects.toSatisfy((err: unknown) => err instanceof ApiError && err.status === 403);
  });

  it("keeps the last table and shows a banner when the server goes away", async () => {
    app.navigate("Home");
    await vi.waitFor(() => expect(root.querySelector(".live-table")).toBeTruthy());
    const jaffnaBefore = liveCells("Jaffna");
    proc.kill();
    await new Promise((resolve) => setTimeout(resolve, 300));
    await app.refreshHome();
    const banner = root.querySelector<HTMLElement>(".offline-banner")!;
    expect(banner.hidden).toBe(false);
    expect(liveCells("Jaffna")).toEqual(jaffnaBefore); // last data retained
  });
});
