import { formatSl } from "./format.js";
export function isoWeekOf(date) {
    // ISO week of the given instant, e.g. "2014-W01"
    const utc = new Date(Date.UTC(date.getUTCFullYear(), date.getUTCMonth(), date.getUTCDate()));
    const weekday = utc.getUTCDay() || 7;
    utc.setUTCDate(utc.getUTCDate() + 4 - weekday);
    const yearStart = Date.UTC(utc.getUTCFullYear(), 0, 1);
    const week = Math.ceil(((utc.getTime() - yearStart) / 86400000 + 1) / 7);
    return `${utc.getUTCFullYear()}-W${String(week).padStart(2, "0")}`;
}
export function buildReturnsView(root, api, defaultWeek) {
    root.innerHTML = "";
    const heading = document.createElement("h2");
    heading.textContent = "Weekly Return of Communicable Diseases (H399)";
    root.appendChild(heading);
    const controls = document.createElement("div");
    controls.className = "returns-controls";
    const weekInput = document.createElement("input");
    weekInput.className = "week-input";
    weekInput.value = defaultWeek ?? isoWeekOf(new Date());
    const load = document.createElement("button");
    load.type = "button";
    load.textContent = "Generate";
    controls.append("Epi week: ", weekInput, load);
    root.appendChild(controls);
    const status = document.createElement("p");
    status.className = "returns-status";
    const tableRoot = document.createElement("div");
    root.append(status, tableRoot);
    const render = (payload) => {
        tableRoot.innerHTML = "";
        const table = document.createElement("table");
        table.className = "returns-table";
        const head = table.createTHead().insertRow();
        for (const column of ["MOH Area", "Disease", "Suspected", "Confirmed", "Generated"]) {
            const th = document.createElement("th");
            th.textContent = column;
            head.appendChild(th);
        }
        const body = table.createTBody();
        for (const ret of payload.returns) {
            const tr = body.insertRow();
            tr.dataset.mohArea = ret.moh_area;
            for (const text of [
                ret.moh_area,
                ret.disease,
                String(ret.suspected_count),
                String(ret.confirmed_count),
                formatSl(ret.generated_at),
            ]) {
                tr.insertCell().textContent = text;
            }
        }
        tableRoot.appendChild(table);
        status.textContent = `Return timeliness for ${weekInput.value}: ${payload.timeliness}`;
    };
    const fetchReturns = () => {
        status.textContent = "";
        void api
            .get(`/api/weekly-return?week=${encodeURIComponent(weekInput.value.trim())}`)
            .then(render)
            .catch((err) => {
            status.textContent = err instanceof Error ? err.message : "failed to load returns";
        });
    };
    load.addEventListener("click", fetchReturns);
    fetchReturns();
}
