/** Typed client for the surveillance service API.
 *
 * The dashboard holds no business logic: every number it shows comes
 * verbatim from these payloads. Sign-in is the X-Officer-Id header.
 */

export interface LiveUpdateRow {
  district: string;
  cases_today: number;
  last_case_at: string | null;
  risk_places_10d: number;
  last_risk_at: string | null;
  centroid: [number, number] | null;
}

export interface LiveUpdatePayload {
  v: number;
  generated_at: string;
  rows: LiveUpdateRow[];
}

export interface OfficerInfo {
  officer_id: string;
  name: string;
  role: string;
  scope: string[];
}

export interface SessionPayload {
  v: number;
  officer: OfficerInfo;
  server_time: string;
}

export interface CaseInfo {
  case_id: string;
  attention: string;
  registered_at: string;
  path: { gn: string; phi_area: string; moh_area: string; district: string };
  [key: string]: unknown;
}

export interface WorklistRow {
  s_no: number;
  case_id: string;
  opd_no: string;
  ward_no: string;
  ward_ticket_no: string;
  title: string;
  first_name: string;
  last_name: string;
  age: string;
  gender: string;
  door_no: string;
  street: string;
  land_type: string;
  gn_division: string;
  mobile: string;
  employment: string;
  registered_at: string;
  register_date_display: string;
  attention: string;
  order_id: string | null;
}

export interface WorklistArea {
  phi_area: string;
  moh_area: string;
  district: string;
  count: number;
  rows: WorklistRow[];
}

export interface WorklistPayload {
  v: number;
  officer: OfficerInfo;
  areas: WorklistArea[];
}

export interface TravelEntryBody {
  day_index: number;
  door_no: string;
  street: string;
  gn_division: string;
  contact_tp: string;
  district_hint?: string;
}

export interface TravelResponse {
  v: number;
  recorded: number;
  risk_places: { district: string; identified_at: string }[];
}

export interface ErrorPayload {
  v: number;
  error: string;
  field?: string;
  reason?: string;
  message?: string;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public payload: ErrorPayload,
  ) {
    super(payload.reason ?? payload.message ?? payload.error ?? `HTTP ${status}`);
  }
}

export class ApiClient {
  officerId: string | null = null;

  constructor(public base: string = "") {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = {};
    if (this.officerId) headers["X-Officer-Id"] = this.officerId;
    if (body !== undefined) headers["Content-Type"] = "application/json";
    const response = await fetch(`${this.base}${path}`, {
      method,
      headers,
      body: body !== undefined ? JSON.stringify(body) : undefined,
    });
    const payload = await response.json();
    if (!response.ok) throw new ApiError(response.status, payload as ErrorPayload);
    return payload as T;
  }

  get<T>(path: string): Promise<T> {
    return this.request<T>("GET", path);
  }

  post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>("POST", path, body);
  }

  liveUpdate(): Promise<LiveUpdatePayload> {
    return this.get("/api/live-update");
  }

  /** Validate an officer id against the registry; keeps it for later calls. */
  async signIn(officerId: string): Promise<SessionPayload> {
    const previous = this.officerId;
    this.officerId = officerId;
    try {
      return await this.get<SessionPayload>("/api/session");
    } catch (err) {
      this.officerId = previous;
      throw err;
    }
  }

  signOut(): void {
    this.officerId = null;
  }

  suggest(source: string, prefix: string, limit = 10): Promise<{ tokens: string[] }> {
    const params = new URLSearchParams({ source, prefix, limit: String(limit) });
    return this.get(`/api/suggest?${params}`);
  }

  registerCase(body: unknown): Promise<{ v: number; case: CaseInfo }> {
    return this.post("/api/cases", body);
  }

  worklist(): Promise<WorklistPayload> {
    return this.get("/api/worklist");
  }

  attend(orderId: string, outcome: "confirmed" | "not_dengue"): Promise<{ case: CaseInfo }> {
    return this.post("/api/attend", { order_id: orderId, outcome });
  }

  submitTravelHistory(caseId: string, entries: TravelEntryBody[]): Promise<TravelResponse> {
    return this.post("/api/travel-history", { case_id: caseId, entries });
  }
}
