"""HTTP API surface.

Auth is a signed-in officer id in the X-Officer-Id header (the dashboard
sign-in screen validates it against the registry); cryptographic auth is an
explicit non-goal and the boundary is documented in the README. Role gating
is enforced here for every endpoint - the dashboard's own gating is
cosmetic only. All payloads are JSON with a schema version field `v`;
responses for identical state are byte-identical (stable field ordering).
Timestamps on the wire are UTC instants; display formatting is the
client's job.
"""
from __future__ import annotations

import json
import logging
import mimetypes
import os
import threading
from datetime import date
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

from .errors import (
    AmbiguousDivision,
    DuplicateDayIndex,
    FutureWeek,
    IllegalTransition,
    NotFound,
    ScopeViolation,
    SurveillanceError,
    TooManyDays,
    UnknownDivision,
    UnknownVocabulary,
    ValidationError,
    WrongOfficer,
)
from .officers import Role
from .registry import intake_from_dict
from .service import SurveillanceService
from .sltime import iso_utc, parse_week
from .travel import entry_forms_from_list
from .workflow import AttentionStatus

logger = logging.getLogger(__name__)

OFFICER_HEADER = "X-Officer-Id"

# role -> endpoints; the public only ever sees the live table and health.
READ_ROLES = (Role.ICN, Role.PHI, Role.MOH, Role.RE, Role.EPID)
ENDPOINT_ROLES = {
    ("GET", "health"): None,  # public
    ("GET", "live-update"): None,
    ("GET", "session"): READ_ROLES,
    ("GET", "suggest"): READ_ROLES,
    ("POST", "cases"): (Role.ICN,),
    ("GET", "case"): READ_ROLES,
    ("GET", "cases"): (Role.PHI, Role.MOH, Role.RE, Role.EPID),
    ("POST", "assign"): (Role.MOH,),
    ("POST", "attend"): (Role.PHI,),
    ("POST", "travel-history"): (Role.PHI,),
    ("GET", "worklist"): (Role.PHI,),
    ("GET", "weekly-return"): (Role.MOH, Role.RE, Role.EPID),
    ("GET", "metrics"): (Role.MOH, Role.RE, Role.EPID),
    ("GET", "risk-places"): (Role.PHI, Role.MOH, Role.RE, Role.EPID),
    ("GET", "response-cycle"): (Role.PHI, Role.MOH, Role.RE, Role.EPID),
}

ERROR_STATUS = {
    ValidationError: 400,
    UnknownVocabulary: 400,
    TooManyDays: 400,
    DuplicateDayIndex: 400,
    FutureWeek: 400,
    UnknownDivision: 400,
    AmbiguousDivision: 400,
    NotFound: 404,
    IllegalTransition: 409,
    ScopeViolation: 403,
    WrongOfficer: 403,
}


def _encode(obj: dict) -> bytes:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":")).encode("utf-8")


class ApiHandler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server_version = "denguewatch"

    @property
    def service(self) -> SurveillanceService:
        return self.server.service

    def log_message(self, fmt, *args):
        logger.debug("%s - %s", self.address_string(), fmt % args)

    # -- plumbing -------------------------------------------------------------

    def _send_json(self, status: int, obj: dict) -> None:
        body = _encode(obj)
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_error_json(self, status: int, error: str, detail: dict | None = None) -> None:
        obj = {"v": 1, "error": error}
        if detail:
            obj.update(detail)
        self._send_json(status, obj)

    def _authorize(self, method: str, endpoint: str):
        """Returns the acting officer (or None for public endpoints)."""
        allowed = ENDPOINT_ROLES[(method, endpoint)]
        if allowed is None:
            return None
        raw = self.headers.get(OFFICER_HEADER, "").strip()
        if not raw:
            raise _HttpError(401, "SignInRequired")
        officer = self.service.officers.get(raw)
        if officer is None:
            raise _HttpError(401, "UnknownOfficer")
        if officer.role not in allowed:
            raise _HttpError(403, "RoleNotAllowed")
        return officer

    def _read_body(self) -> dict:
        length = int(self.headers.get("Content-Length", "0") or "0")
        if length == 0:
            return {}
        raw = self.rfile.read(length)
        try:
            return json.loads(raw.decode("utf-8"))
        except ValueError:
            raise _HttpError(400, "BadJson")

    # -- dispatch ---------------------------------------------------------------

    def do_GET(self):
        self._route("GET")

    def do_POST(self):
        self._route("POST")

    def _route(self, method: str) -> None:
        parsed = urlparse(self.path)
        parts = [p for p in parsed.path.split("/") if p]
        query = {k: v[0] for k, v in parse_qs(parsed.query).items()}
        try:
            if not parts or parts[0] != "api":
                if method == "GET":
                    self._serve_static(parsed.path)
                    return
                raise _HttpError(404, "NotFound")
            self._route_api(method, parts[1:], query)
        except _HttpError as exc:
            self._send_error_json(exc.status, exc.code, exc.detail)
        except SurveillanceError as exc:
            status = 500
            for klass, code in ERROR_STATUS.items():
                if isinstance(exc, klass):
                    status = code
                    break
            detail = {"message": str(exc)}
            if isinstance(exc, ValidationError):
                detail = {"field": exc.field, "reason": exc.reason}
            self._send_error_json(status, type(exc).__name__, detail)
        except Exception:
            logger.exception("unhandled error serving %s %s", method, self.path)
            self._send_error_json(500, "InternalError")

    def _route_api(self, method: str, parts: list[str], query: dict) -> None:
        service = self.service
        head = parts[0] if parts else ""

        if method == "GET" and head == "health":
            self._authorize("GET", "health")
            self._send_json(
                200,
                {
                    "v": 1,
                    "status": "ok",
                    "events": service.log.last_id,
                    "districts": len(service.gazetteer.districts),
                },
            )
        elif method == "GET" and head == "live-update":
            self._authorize("GET", "live-update")
            now = service.clock.now()
            rows = service.live_update(now)
            out = []
            for row in rows:
                obj = row.to_dict()
                centroid = service.gazetteer.centroid_of_district(row.district)
                obj["centroid"] = list(centroid) if centroid else None
                out.append(obj)
            self._send_json(
                200, {"v": 1, "generated_at": iso_utc(now), "rows": out}
            )
        elif method == "GET" and head == "session":
            officer = self._authorize("GET", "session")
            self._send_json(
                200,
                {
                    "v": 1,
                    "officer": officer.to_dict(),
                    "server_time": iso_utc(service.clock.now()),
                },
            )
        elif method == "GET" and head == "suggest":
            self._authorize("GET", "suggest")
            source = query.get("source", "")
            prefix = query.get("prefix", "")
            try:
                limit = int(query.get("limit", "10"))
            except ValueError:
                raise ValidationError("limit", "must be an integer") from None
            tokens = service.suggest(source, prefix, limit)
            self._send_json(200, {"v": 1, "source": source, "tokens": tokens})
        elif method == "POST" and head == "cases":
            self._authorize("POST", "cases")
            form = intake_from_dict(self._read_body())
            record = service.register_case(form)
            self._send_json(201, {"v": 1, "case": record.to_dict()})
        elif method == "GET" and head == "cases" and len(parts) == 2:
            self._authorize("GET", "case")
            record = service.get_case(parts[1])
            self._send_json(200, {"v": 1, "case": record.to_dict()})
        elif method == "GET" and head == "cases" and len(parts) == 3 and parts[2] == "response-cycle":
            self._authorize("GET", "response-cycle")
            cycle = service.response_cycle(parts[1])
            self._send_json(200, {"v": 1, "cycle": cycle.to_dict()})
        elif method == "GET" and head == "cases":
            self._authorize("GET", "cases")
            filters = {}
            for key in ("district", "moh_area", "phi_area"):
                if key in query:
                    filters[key] = query[key]
            if "day" in query:
                try:
                    filters["day"] = date.fromisoformat(query["day"])
                except ValueError:
                    raise ValidationError("day", "expected YYYY-MM-DD") from None
            if "status" in query:
                try:
                    filters["status"] = AttentionStatus(query["status"])
                except ValueError:
                    raise ValidationError(
                        "status", f"expected one of {[s.value for s in AttentionStatus]}"
                    ) from None
            records = service.list_cases(**filters)
            self._send_json(200, {"v": 1, "cases": [r.to_dict() for r in records]})
        elif method == "POST" and head == "assign":
            officer = self._authorize("POST", "assign")
            body = self._read_body()
            order = service.assign(
                str(body.get("case_id", "")), officer.officer_id, str(body.get("assignee", ""))
            )
            self._send_json(201, {"v": 1, "order": order.to_dict()})
        elif method == "POST" and head == "attend":
            officer = self._authorize("POST", "attend")
            body = self._read_body()
            outcome = str(body.get("outcome", ""))
            if outcome not in ("confirmed", "not_dengue"):
                raise ValidationError("outcome", "must be confirmed or not_dengue")
            order = service.record_attendance(
                str(body.get("order_id", "")), officer.officer_id, outcome
            )
            case = service.get_case(order.case_id)
            self._send_json(200, {"v": 1, "order": order.to_dict(), "case": case.to_dict()})
        elif method == "POST" and head == "travel-history":
            officer = self._authorize("POST", "travel-history")
            body = self._read_body()
            forms = entry_forms_from_list(body.get("entries", []))
            changed = service.submit_travel_history(
                str(body.get("case_id", "")), officer.officer_id, forms
            )
            self._send_json(
                200,
                {
                    "v": 1,
                    "recorded": len(forms),
                    "risk_places": [p.to_dict() for p in changed],
                },
            )
        elif method == "GET" and head == "worklist":
            officer = self._authorize("GET", "worklist")
            worklist = service.phi_worklist(officer.officer_id)
            self._send_json(200, {"v": 1, **worklist})
        elif method == "GET" and head == "weekly-return":
            self._authorize("GET", "weekly-return")
            if "week" not in query:
                raise ValidationError("week", "required, e.g. 2014-W01")
            try:
                week = parse_week(query["week"])
            except ValueError as exc:
                raise ValidationError("week", str(exc)) from None
            if "moh_area" in query:
                ret = service.weekly_return(query["moh_area"], week)
                self._send_json(200, {"v": 1, "return": ret.to_dict()})
            else:
                returns = service.generate_all(week)
                self._send_json(
                    200,
                    {
                        "v": 1,
                        "returns": [r.to_dict() for r in returns],
                        "timeliness": service.timeliness(week),
                    },
                )
        elif method == "GET" and head == "metrics":
            self._authorize("GET", "metrics")
            ledger = service.returns_ledger
            self._send_json(
                200,
                {
                    "v": 1,
                    "baseline": service.baseline().to_dict(),
                    "cases_total": len(service.cases),
                    "cases_confirmed": len(service.id_register),
                    "risk_places_total": len(service.risk_places),
                    "timeliness": {
                        f"{week[0]}-W{week[1]:02d}": service.timeliness(week)
                        for week in ledger.weeks()
                    },
                },
            )
        elif method == "GET" and head == "risk-places":
            self._authorize("GET", "risk-places")
            district = query.get("district")
            window = query.get("window_days")
            try:
                window_days = int(window) if window else None
            except ValueError:
                raise ValidationError("window_days", "must be an integer") from None
            places = service.risk_places.list_places(
                district=district,
                now=service.clock.now() if window_days else None,
                window_days=window_days,
            )
            self._send_json(200, {"v": 1, "places": [p.to_dict() for p in places]})
        else:
            raise _HttpError(404, "NotFound")

    def _serve_static(self, path: str) -> None:
        static_dir = getattr(self.server, "static_dir", None)
        if not static_dir:
            raise _HttpError(404, "NotFound")
        rel = path.lstrip("/") or "index.html"
        full = os.path.normpath(os.path.join(static_dir, rel))
        if os.path.commonpath([full, static_dir]) != static_dir:
            raise _HttpError(404, "NotFound")
        if os.path.isdir(full):
            full = os.path.join(full, "index.html")
        if not os.path.isfile(full):
            raise _HttpError(404, "NotFound")
        ctype = mimetypes.guess_type(full)[0] or "application/octet-stream"
        with open(full, "rb") as fh:
            body = fh.read()
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)


class _HttpError(Exception):
    def __init__(self, status: int, code: str, detail: dict | None = None):
        self.status = status
        self.code = code
        self.detail = detail
        super().__init__(code)


class ApiServer:
    """Threaded HTTP server wrapper; listen address 'host:port' (port 0 = any)."""

    def __init__(self, service: SurveillanceService, listen: str, static_dir: str | None = None):
        host, _, port_s = listen.partition(":")
        self.httpd = ThreadingHTTPServer((host, int(port_s or "0")), ApiHandler)
        self.httpd.service = service
        self.httpd.static_dir = os.path.abspath(static_dir) if static_dir else None
        self._thread: threading.Thread | None = None

    @property
    def address(self) -> str:
        host, port = self.httpd.server_address[:2]
        return f"{host}:{port}"

    def start(self) -> None:
        self._thread = threading.Thread(
            target=self.httpd.serve_forever, kwargs={"poll_interval": 0.05}, daemon=True
        )
        self._thread.start()

    def serve_forever(self) -> None:
        self.httpd.serve_forever()

    def stop(self) -> None:
        self.httpd.shutdown()
        self.httpd.server_close()
        if self._thread is not None:
            self._thread.join(timeout=5)
