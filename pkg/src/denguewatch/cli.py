"""Operations CLI: serve, seed, replay-check, export, outbox tail.

Exit codes: 0 success, 1 failure with message, 2 usage errors.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
import threading
import time

from .config import build_service, load_config
from .errors import SurveillanceError
from .httpapi import ApiServer
from .reporting import h399_csv, h399_table, risk_csv
from .sltime import ManualClock, parse_iso, parse_week
from . import seeds

RETRY_LOOP_SECONDS = 30.0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(levelname)s %(message)s")
    try:
        return args.func(args)
    except SurveillanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="denguewatch",
        description="Real-time dengue notification and surveillance service.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--config", required=True)
    p_serve.add_argument("--repair", action="store_true", help="truncate a corrupt log tail")
    p_serve.add_argument(
        "--clock",
        default="system",
        help="'system' or 'manual:<ISO instant>' for demo/replay servers",
    )
    p_serve.add_argument("--static-dir", default=None, help="serve the dashboard bundle from here")
    p_serve.set_defaults(func=cmd_serve)

    p_seed = sub.add_parser("seed", help="write a deployment directory with fixture data")
    p_seed.add_argument("--scenario", default="figure5",
                        choices=["blank", "figure5", "figure6", "timeliness"])
    p_seed.add_argument("--dest", required=True)
    p_seed.set_defaults(func=cmd_seed)

    p_check = sub.add_parser("replay-check", help="verify event-log replay determinism")
    p_check.add_argument("--config", required=True)
    p_check.set_defaults(func=cmd_replay_check)

    p_export = sub.add_parser("export", help="export H399 returns or risk places as CSV")
    export_sub = p_export.add_subparsers(dest="what", required=True)
    p_h399 = export_sub.add_parser("h399")
    p_h399.add_argument("--config", required=True)
    p_h399.add_argument("--week", required=True, help="e.g. 2014-W01")
    p_h399.add_argument("--moh-area", default=None)
    p_h399.add_argument("--format", default="csv", choices=["csv", "table"])
    p_h399.add_argument("--out", default=None)
    p_h399.set_defaults(func=cmd_export_h399)
    p_risk = export_sub.add_parser("risk")
    p_risk.add_argument("--config", required=True)
    p_risk.add_argument("--district", default=None)
    p_risk.add_argument("--window", type=int, default=None, help="days back from now")
    p_risk.add_argument("--now", default=None, help="ISO instant overriding the clock")
    p_risk.add_argument("--out", default=None)
    p_risk.set_defaults(func=cmd_export_risk)

    p_outbox = sub.add_parser("outbox", help="inspect the alert outbox")
    outbox_sub = p_outbox.add_subparsers(dest="action", required=True)
    p_tail = outbox_sub.add_parser("tail")
    p_tail.add_argument("--config", required=True)
    p_tail.add_argument("-n", type=int, default=10)
    p_tail.add_argument("-f", "--follow", action="store_true")
    p_tail.set_defaults(func=cmd_outbox_tail)

    return parser


def _clock_from_arg(arg: str):
    if arg == "system":
        return None
    if arg.startswith("manual:"):
        return ManualClock(parse_iso(arg.split(":", 1)[1]))
    print(f"error: bad --clock {arg!r}", file=sys.stderr)
    raise SystemExit(2)


def cmd_serve(args) -> int:
    config = load_config(args.config)
    clock = _clock_from_arg(args.clock)
    service = build_service(config, clock=clock, repair=args.repair)
    server = ApiServer(service, config.listen, static_dir=args.static_dir)
    stop_retries = threading.Event()

    def retry_loop():
        while not stop_retries.wait(RETRY_LOOP_SECONDS):
            try:
                service.retry_pending()
            except Exception:
                logging.getLogger(__name__).exception("alert retry pass failed")

    threading.Thread(target=retry_loop, daemon=True).start()
    print(f"denguewatch serving on http://{server.address} "
          f"({service.log.last_id} events recovered)")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        stop_retries.set()
        server.stop()
        service.log.close()
    return 0


def cmd_seed(args) -> int:
    config_path = seeds.seed(args.dest, args.scenario)
    print(f"seeded scenario {args.scenario!r}; config at {config_path}")
    return 0


def cmd_replay_check(args) -> int:
    """Replay the log twice from empty and compare canonical state."""
    config = load_config(args.config)
    first = build_service(config, use_snapshot=False, transport=_NullTransport())
    state_a = first.state_dict()
    first.log.close()
    second = build_service(config, use_snapshot=False, transport=_NullTransport())
    state_b = second.state_dict()
    second.log.close()
    deterministic = state_a == state_b
    if deterministic and os.path.exists(config.snapshot_path):
        snapshotted = build_service(config, use_snapshot=True, transport=_NullTransport())
        deterministic = snapshotted.state_dict() == state_a
        snapshotted.log.close()
    print(f"deterministic: {'true' if deterministic else 'false'} "
          f"({state_a['last_event_id']} events)")
    return 0 if deterministic else 1


def cmd_export_h399(args) -> int:
    config = load_config(args.config)
    service = build_service(config, transport=_NullTransport())
    week = parse_week(args.week)
    if args.moh_area:
        returns = [service.weekly_return(args.moh_area, week)]
    else:
        returns = service.generate_all(week)
    text = h399_csv(returns) if args.format == "csv" else h399_table(returns)
    _emit(text, args.out)
    service.log.close()
    return 0


def cmd_export_risk(args) -> int:
    config = load_config(args.config)
    service = build_service(config, transport=_NullTransport())
    now = parse_iso(args.now) if args.now else (service.clock.now() if args.window else None)
    places = service.risk_places.list_places(
        district=args.district, now=now, window_days=args.window
    )
    _emit(risk_csv(places), args.out)
    service.log.close()
    return 0


def cmd_outbox_tail(args) -> int:
    config = load_config(args.config)
    path = config.outbox_path
    seen = 0
    while True:
        lines = []
        try:
            with open(path, encoding="utf-8") as fh:
                lines = fh.read().splitlines()
        except OSError:
            pass
        if seen == 0:
            for line in lines[-args.n:]:
                print(line)
            seen = len(lines)
        elif len(lines) > seen:
            for line in lines[seen:]:
                print(line)
            seen = len(lines)
        if not args.follow:
            return 0
        time.sleep(0.5)


class _NullTransport:
    """Read-only commands must not emit outbox traffic."""

    def send(self, channel, recipient, subject, body, at):
        return None


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    raise SystemExit(main())
