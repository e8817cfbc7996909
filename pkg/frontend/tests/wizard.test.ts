import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { dayLabel } from "../src/format.js";
import { buildTravelWizard, WIZARD_DAYS } from "../src/wizard.js";

const REGISTERED_AT = "2013-12-31T17:01:33Z";

function makeWizard(fetchMock = vi.fn()) {
  vi.stubGlobal("fetch", fetchMock);
  const root = document.createElement("div");
  const wizard = buildTravelWizard(root, {
    api: new ApiClient(""),
    caseId: "C000001",
    registeredAtIso: REGISTERED_AT,
    suggestDebounceMs: 0,
  });
  return { root, wizard, fetchMock };
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("travel history wizard", () => {
  it("pre-labels every day with registration date minus k days", () => {
    const { root } = makeWizard();
    const legends = [...root.querySelectorAll("legend")].map((l) => l.textContent);
    expect(legends).toHaveLength(WIZARD_DAYS);
    expect(legends[0]).toBe("Day 1: 30-12-2013 22:31:33");
    expect(legends[1]).toBe("Day 2: 29-12-2013 22:31:33");
    for (let k = 1; k <= WIZARD_DAYS; k++) {
      expect(legends[k - 1]).toBe(dayLabel(REGISTERED_AT, k));
    }
  });

  it("steps between days", () => {
    const { root, wizard } = makeWizard();
    expect(wizard.currentDay()).toBe(1);
    (root.querySelector("button:nth-of-type(2)") as HTMLButtonElement).click(); // next
    expect(wizard.currentDay()).toBe(2);
    const visible = [...root.querySelectorAll<HTMLElement>(".wizard-step")].filter(
      (s) => !s.hidden,
    );
    expect(visible).toHaveLength(1);
    expect(visible[0].dataset.day).toBe("2");
  });

  it("blocks submission with zero filled days and sends no request", async () => {
    const { wizard, fetchMock } = makeWizard();
    expect(wizard.submitButton.disabled).toBe(true);
    await wizard.submit();
    expect(fetchMock).not.toHaveBeenCalled();
  });

  it("requires all starred fields once a day is filled", () => {
    const { root, wizard } = makeWizard();
    wizard.setDay(3, { door_no: "12" });
    expect(wizard.submitButton.disabled).toBe(true);
    expect(root.textContent).toContain("Day 3 is incomplete");
    wizard.setDay(3, {
      street: "Main Street",
      gn_division: "Navanthurai South",
      contact_tp: "0771234567",
    });
    expect(wizard.submitButton.disabled).toBe(false);
  });

  it("submits only the filled days", async () => {
    const fetchMock = vi.fn().mockResolvedValue(
      new Response(JSON.stringify({ v: 1, recorded: 2, risk_places: [] }), { status: 200 }),
    );
    const { wizard } = makeWizard(fetchMock);
    wizard.setDay(1, {
      door_no: "12",
      street: "Main Street",
      gn_division: "Navanthurai South",
      contact_tp: "0771111111",
    });
    wizard.setDay(7, {
      door_no: "31",
      street: "KKS Road",
      gn_division: "Chundikul North",
      contact_tp: "0772222222",
    });
    expect(wizard.filledDays()).toEqual([1, 7]);
    await wizard.submit();
    expect(fetchMock).toHaveBeenCalledTimes(1);
    const body = JSON.parse(fetchMock.mock.calls[0][1].body as string);
    expect(body.case_id).toBe("C000001");
    expect(body.entries.map((e: { day_index: number }) => e.day_index)).toEqual([1, 7]);
    expect(body.entries[0]).toMatchObject({
      door_no: "12",
      street: "Main Street",
      gn_division: "Navanthurai South",
      contact_tp: "0771111111",
    });
  });
});
