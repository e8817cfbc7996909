import json
import os
import subprocess
import sys
import time
import urllib.request

import pytest

ENV = dict(os.environ, PYTHONUNBUFFERED="1")


def run_cli(*args, **kwargs):
    return subprocess.run(
        [sys.executable, "-m", "denguewatch.cli", *args],
        capture_output=True, text=True, env=ENV, timeout=60, **kwargs,
    )


@pytest.fixture(scope="module")
def figure6_dir(tmp_path_factory):
    dest = tmp_path_factory.mktemp("figure6")
    result = run_cli("seed", "--scenario", "figure6", "--dest", str(dest))
    assert result.returncode == 0, result.stderr
    return dest


def test_seed_writes_deployment(figure6_dir):
    assert (figure6_dir / "config.json").exists()
    assert (figure6_dir / "gazetteer.txt").exists()
    assert (figure6_dir / "data" / "events.jsonl").exists()
    # seeding dispatched alerts into the outbox
    outbox = (figure6_dir / "data" / "outbox.jsonl").read_text().strip().splitlines()
    assert len(outbox) == 4
    record = json.loads(outbox[0])
    assert set(record) == {"timestamp", "channel", "recipient", "body"}


def test_replay_check_reports_deterministic(figure6_dir):
    result = run_cli("replay-check", "--config", str(figure6_dir / "config.json"))
    assert result.returncode == 0, result.stderr
    assert "deterministic: true" in result.stdout


def test_export_h399_figure5(tmp_path):
    dest = tmp_path / "figure5"
    assert run_cli("seed", "--scenario", "figure5", "--dest", str(dest)).returncode == 0
    result = run_cli(
        "export", "h399", "--config", str(dest / "config.json"), "--week", "2014-W01"
    )
    assert result.returncode == 0, result.stderr
    lines = result.stdout.strip().splitlines()
    assert lines[0] == "moh_area,epi_week,disease,suspected,confirmed,generated_at"
    jaffna = next(l for l in lines if l.startswith("Jaffna,"))
    assert jaffna.split(",")[3:5] == ["1", "0"]  # suspected, not yet confirmed
    table = run_cli(
        "export", "h399", "--config", str(dest / "config.json"),
        "--week", "2014-W01", "--format", "table",
    )
    assert "Suspected" in table.stdout


def test_export_risk_figure6(figure6_dir):
    result = run_cli(
        "export", "risk", "--config", str(figure6_dir / "config.json"),
        "--district", "Jaffna", "--window", "10",
        "--now", "2013-12-31T17:15:44Z",
    )
    assert result.returncode == 0, result.stderr
    lines = result.stdout.strip().splitlines()
    assert lines[0] == "district,door_no,street,gn_division,identified_at,n_sources"
    assert len(lines) == 1 + 5
    assert lines[-1].startswith("Jaffna,12,Main Street,Navanthurai South,30-12-2013 22:31:33")


def test_outbox_tail(figure6_dir):
    result = run_cli("outbox", "tail", "--config", str(figure6_dir / "config.json"), "-n", "2")
    assert result.returncode == 0
    assert len(result.stdout.strip().splitlines()) == 2


def test_usage_error_exit_code():
    result = run_cli("bogus-command")
    assert result.returncode == 2


def _start_serve(config_path, *extra):
    proc = subprocess.Popen(
        [sys.executable, "-m", "denguewatch.cli", "serve", "--config", str(config_path), *extra],
        stdout=subprocess.PIPE, stderr=subprocess.STDOUT, text=True, env=ENV,
    )
    line = proc.stdout.readline()
    return proc, line


def test_serve_and_health(figure6_dir, tmp_path):
    env_port = dict(ENV, DENGUEWATCH_LISTEN="127.0.0.1:0")
    proc = subprocess.Popen(
        [sys.executable, "-m", "denguewatch.cli", "serve",
         "--config", str(figure6_dir / "config.json"),
         "--clock", "manual:2013-12-31T17:15:44Z"],
        stdout=subprocess.PIPE, stderr=subprocess.STDOUT, text=True, env=env_port,
    )
    try:
        line = proc.stdout.readline()
        assert "serving on http://" in line, line
        base = line.split("http://")[1].split()[0]
        with urllib.request.urlopen(f"http://{base}/api/health", timeout=5) as resp:
            health = json.loads(resp.read())
        assert health["status"] == "ok"
        assert health["events"] > 0
        with urllib.request.urlopen(f"http://{base}/api/live-update", timeout=5) as resp:
            live = json.loads(resp.read())
        jaffna = live["rows"][8]
        assert (jaffna["cases_today"], jaffna["risk_places_10d"]) == (1, 5)
    finally:
        proc.terminate()
        proc.wait(timeout=10)


def test_serve_corrupt_log_diagnostic_and_repair(tmp_path):
    dest = tmp_path / "broken"
    assert run_cli("seed", "--scenario", "figure5", "--dest", str(dest)).returncode == 0
    events = dest / "data" / "events.jsonl"
    with open(events, "ab") as fh:
        fh.write(b'{"v":1,"event_id":999,"torn')
    result = run_cli("replay-check", "--config", str(dest / "config.json"))
    assert result.returncode == 1
    assert "corrupt" in result.stderr.lower()
    assert "line" in result.stderr

    env_port = dict(ENV, DENGUEWATCH_LISTEN="127.0.0.1:0")
    proc = subprocess.Popen(
        [sys.executable, "-m", "denguewatch.cli", "serve",
         "--config", str(dest / "config.json"), "--repair"],
        stdout=subprocess.PIPE, stderr=subprocess.STDOUT, text=True, env=env_port,
    )
    try:
        line = proc.stdout.readline()
        assert "serving on http://" in line, line
    finally:
        proc.terminate()
        proc.wait(timeout=10)
    # the log is valid again after repair
    result = run_cli("replay-check", "--config", str(dest / "config.json"))
    assert result.returncode == 0
    assert "deterministic: true" in result.stdout
