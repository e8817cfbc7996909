import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { buildReturnsView, isoWeekOf } from "../src/returns.js";

const PAYLOAD = {
  v: 1,
  returns: [
    {
      moh_area: "Colombo",
      epi_week: [2014, 1],
      disease: "dengue",
      suspected_count: 0,
      confirmed_count: 0,
      generated_at: "2014-01-02T03:30:00Z",
    },
    {
      moh_area: "Jaffna",
      epi_week: [2014, 1],
      disease: "dengue",
      suspected_count: 5,
      confirmed_count: 3,
      generated_at: "2014-01-02T03:30:00Z",
    },
  ],
  timeliness: 1.0,
};

afterEach(() => vi.unstubAllGlobals());

describe("ISO week labelling", () => {
  it("matches the server's convention on known dates", () => {
    expect(isoWeekOf(new Date("2013-12-31T17:01:33Z"))).toBe("2014-W01");
    expect(isoWeekOf(new Date("2014-01-06T00:00:00Z"))).toBe("2014-W02");
    expect(isoWeekOf(new Date("2014-01-05T00:00:00Z"))).toBe("2014-W01");
  });
});

describe("returns view", () => {
  it("renders every count verbatim and the timeliness line", async () => {
    const fetchMock = vi.fn().mockResolvedValue(
      new Response(JSON.stringify(PAYLOAD), { status: 200 }),
    );
    vi.stubGlobal("fetch", fetchMock);
    const root = document.createElement("div");
    buildReturnsView(root, new ApiClient(""), "2014-W01");
    await vi.waitFor(() => expect(root.querySelector(".returns-table")).toBeTruthy());
    const jaffna = [...root.querySelectorAll('tr[data-moh-area="Jaffna"] td')].map(
      (td) => td.textContent,
    );
    expect(jaffna.slice(0, 4)).toEqual(["Jaffna", "dengue", "5", "3"]);
    expect(root.querySelector(".returns-status")!.textContent).toContain("1");
    expect(String(fetchMock.mock.calls[0][0])).toContain("week=2014-W01");
  });

  it("surfaces a server rejection instead of a table", async () => {
    const fetchMock = vi.fn().mockResolvedValue(
      new Response(
        JSON.stringify({ v: 1, error: "FutureWeek", message: "week 2099-W01 is in the future" }),
        { status: 400 },
      ),
    );
    vi.stubGlobal("fetch", fetchMock);
    const root = document.createElement("div");
    buildReturnsView(root, new ApiClient(""), "2099-W01");
    await vi.waitFor(() =>
      expect(root.querySelector(".returns-status")!.textContent).toContain("future"),
    );
    expect(root.querySelector(".returns-table")).toBeFalsy();
  });
});
