/** Sri Lanka wall-clock rendering of the API's UTC instants.
 *
 * The server sends UTC timestamps and leaves display formatting to the
 * client; the dashboard renders DD-MM-YYYY HH:MM:SS in Asia/Colombo with
 * absent values as the literal "Nil".
 */
const SL_TIME_ZONE = "Asia/Colombo";
export const NIL = "Nil";
const slFormatter = new Intl.DateTimeFormat("en-GB", {
    timeZone: SL_TIME_ZONE,
    hour12: false,
    year: "numeric",
    month: "2-digit",
    day: "2-digit",
    hour: "2-digit",
    minute: "2-digit",
    second: "2-digit",
});
export function formatSl(isoUtc) {
    const date = isoUtc instanceof Date ? isoUtc : new Date(isoUtc);
    const parts = {};
    for (const part of slFormatter.formatToParts(date)) {
        parts[part.type] = part.value;
    }
    // Intl can render midnight as "24"; the tables use 00
    const hour = parts.hour === "24" ? "00" : parts.hour;
    return `${parts.day}-${parts.month}-${parts.year} ${hour}:${parts.minute}:${parts.second}`;
}
export function formatSlOrNil(isoUtc) {
    return isoUtc ? formatSl(isoUtc) : NIL;
}
const DAY_MS = 24 * 60 * 60 * 1000;
/** Wizard heading for day k: the registration instant minus k days. */
export function dayLabel(registeredAtIso, dayIndex) {
    const at = new Date(new Date(registeredAtIso).getTime() - dayIndex * DAY_MS);
    return `Day ${dayIndex}: ${formatSl(at)}`;
}
