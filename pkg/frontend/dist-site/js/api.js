/** Typed client for the surveillance service API.
 *
 * The dashboard holds no business logic: every number it shows comes
 * verbatim from these payloads. Sign-in is the X-Officer-Id header.
 */
export class ApiError extends Error {
    constructor(status, payload) {
        super(payload.reason ?? payload.message ?? payload.error ?? `HTTP ${status}`);
        this.status = status;
        this.payload = payload;
    }
}
export class ApiClient {
    constructor(base = "") {
        this.base = base;
        this.officerId = null;
    }
    async request(method, path, body) {
        const headers = {};
        if (this.officerId)
            headers["X-Officer-Id"] = this.officerId;
        if (body !== undefined)
            headers["Content-Type"] = "application/json";
        const response = await fetch(`${this.base}${path}`, {
            method,
            headers,
            body: body !== undefined ? JSON.stringify(body) : undefined,
        });
        const payload = await response.json();
        if (!response.ok)
            throw new ApiError(response.status, payload);
        return payload;
    }
    get(path) {
        return this.request("GET", path);
    }
    post(path, body) {
        return this.request("POST", path, body);
    }
    liveUpdate() {
        return this.get("/api/live-update");
    }
    /** Validate an officer id against the registry; keeps it for later calls. */
    async signIn(officerId) {
        const previous = this.officerId;
        this.officerId = officerId;
        try {
            return await this.get("/api/session");
        }
        catch (err) {
            this.officerId = previous;
            throw err;
        }
    }
    signOut() {
        this.officerId = null;
    }
    suggest(source, prefix, limit = 10) {
        const params = new URLSearchParams({ source, prefix, limit: String(limit) });
        return this.get(`/api/suggest?${params}`);
    }
    registerCase(body) {
        return this.post("/api/cases", body);
    }
    worklist() {
        return this.get("/api/worklist");
    }
    attend(orderId, outcome) {
        return this.post("/api/attend", { order_id: orderId, outcome });
    }
    submitTravelHistory(caseId, entries) {
        return this.post("/api/travel-history", { case_id: caseId, entries });
    }
}
