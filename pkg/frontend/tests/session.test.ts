import { describe, expect, it } from "vitest";

import { navItemsFor, PUBLIC_NAV } from "../src/session.js";

describe("role-driven navigation", () => {
  it("public sees exactly the informational navigation", () => {
    expect(navItemsFor(null)).toEqual([
      "Home",
      "Dengue Map",
      "Feature",
      "Fever Symptoms",
      "Case Management",
      "Prevention",
    ]);
  });

  it("each role adds exactly its work page", () => {
    expect(navItemsFor("ICN")).toEqual([...PUBLIC_NAV, "Register Case"]);
    expect(navItemsFor("PHI")).toEqual([...PUBLIC_NAV, "My Area"]);
    expect(navItemsFor("MOH")).toEqual([...PUBLIC_NAV, "Returns"]);
    expect(navItemsFor("RE")).toEqual([...PUBLIC_NAV, "Returns"]);
    expect(navItemsFor("EPID")).toEqual([...PUBLIC_NAV, "Returns"]);
    expect(navItemsFor("PUBLIC")).toEqual([...PUBLIC_NAV]);
  });
});
