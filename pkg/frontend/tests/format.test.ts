import { describe, expect, it } from "vitest";

import { dayLabel, formatSl, formatSlOrNil, NIL } from "../src/format.js";

// 2013-12-31T17:01:33Z is 22:31:33 on the Sri Lanka wall clock
const REGISTERED_AT = "2013-12-31T17:01:33Z";

describe("Sri Lanka display formatting", () => {
  it("renders DD-MM-YYYY HH:MM:SS in Asia/Colombo", () => {
    expect(formatSl(REGISTERED_AT)).toBe("31-12-2013 22:31:33");
  });

  it("renders absent values as Nil", () => {
    expect(formatSlOrNil(null)).toBe(NIL);
    expect(formatSlOrNil(undefined)).toBe(NIL);
    expect(formatSlOrNil(REGISTERED_AT)).toBe("31-12-2013 22:31:33");
  });

  it("rolls the calendar day on the SL clock, not UTC", () => {
    // 19:00Z is already 00:30 the next day in Colombo
    expect(formatSl("2013-12-31T19:00:00Z")).toBe("01-01-2014 00:30:00");
  });
});

describe("travel wizard day labels", () => {
  it("labels day k with the registration date minus k days", () => {
    expect(dayLabel(REGISTERED_AT, 1)).toBe("Day 1: 30-12-2013 22:31:33");
    expect(dayLabel(REGISTERED_AT, 2)).toBe("Day 2: 29-12-2013 22:31:33");
    expect(dayLabel(REGISTERED_AT, 14)).toBe("Day 14: 17-12-2013 22:31:33");
  });

  it("holds for every day index in range", () => {
    for (let k = 1; k <= 14; k++) {
      const expected = new Date(new Date(REGISTERED_AT).getTime() - k * 86400_000);
      expect(dayLabel(REGISTERED_AT, k)).toBe(`Day ${k}: ${formatSl(expected)}`);
    }
  });
});
