import random
import threading
from dataclasses import replace
from datetime import timedelta

import pytest

from denguewatch import seeds
from denguewatch.errors import IllegalTransition, NotFound, ScopeViolation, WrongOfficer
from denguewatch.workflow import AttentionStatus, LEGAL_TRANSITIONS

from conftest import build_service

REG_AT = seeds.FIGURE5_REGISTERED_AT
PHI = seeds.PHI_OFFICER_ID
MOH = seeds.MOH_OFFICER_ID
COLOMBO_PHI = "901234567V"
COLOMBO_MOH = "650987654V"


def register(service, **overrides):
    form = seeds.figure5_intake()
    if overrides:
        form = replace(form, **overrides)
    return service.register_case(form, now=REG_AT)


def test_manual_assign_creates_work_order(manual_service):
    case = register(manual_service)
    order = manual_service.assign(case.case_id, MOH, PHI)
    assert order.phi_area == "Gurunagar II"
    assert order.assigned_to == PHI
    assert manual_service.get_case(case.case_id).attention == AttentionStatus.ASSIGNED


def test_assign_twice_is_illegal(manual_service):
    case = register(manual_service)
    manual_service.assign(case.case_id, MOH, PHI)
    with pytest.raises(IllegalTransition):
        manual_service.assign(case.case_id, MOH, PHI)


def test_assign_out_of_scope_phi(manual_service):
    case = register(manual_service)
    with pytest.raises(ScopeViolation):
        manual_service.assign(case.case_id, MOH, COLOMBO_PHI)
    assert manual_service.get_case(case.case_id).attention == AttentionStatus.REPORTED


def test_assign_wrong_moh_office(manual_service):
    case = register(manual_service)
    with pytest.raises(ScopeViolation):
        manual_service.assign(case.case_id, COLOMBO_MOH, PHI)


def test_assign_unknown_case(manual_service):
    with pytest.raises(NotFound):
        manual_service.assign("C000042", MOH, PHI)


def test_confirmation_enters_id_register(service):
    case = register(service)
    order = service.orders.for_case(case.case_id)
    updated = service.record_attendance(
        order.order_id, PHI, "confirmed", now=REG_AT + timedelta(hours=30)
    )
    assert updated.attended_at is not None
    assert service.get_case(case.case_id).attention == AttentionStatus.CONFIRMED
    entries = service.id_register.all()
    assert len(entries) == 1
    assert entries[0].moh_area == "Jaffna"
    assert entries[0].entered_by == PHI


def test_not_dengue_branch_keeps_register_empty(service):
    case = register(service)
    order = service.orders.for_case(case.case_id)
    service.record_attendance(order.order_id, PHI, "not_dengue", now=REG_AT + timedelta(hours=5))
    assert service.get_case(case.case_id).attention == AttentionStatus.NOT_DENGUE
    assert len(service.id_register) == 0


def test_attendance_by_wrong_officer_changes_nothing(service):
    case = register(service)
    order = service.orders.for_case(case.case_id)
    before = service.state_dict()
    with pytest.raises(WrongOfficer):
        service.record_attendance(order.order_id, COLOMBO_PHI, "confirmed")
    assert service.state_dict() == before


def test_attendance_twice_is_illegal(service):
    case = register(service)
    order = service.orders.for_case(case.case_id)
    service.record_attendance(order.order_id, PHI, "confirmed", now=REG_AT + timedelta(hours=1))
    with pytest.raises(IllegalTransition):
        service.record_attendance(order.order_id, PHI, "confirmed")


def test_worklist_counts_figure5(service):
    register(service)
    worklist = service.phi_worklist(PHI)
    counts = {a["phi_area"]: a["count"] for a in worklist["areas"]}
    assert counts == {"Gurunagar I": 0, "Gurunagar II": 1}
    row = worklist["areas"][1]["rows"][0]
    assert row["attention"] == "Attend"


def test_worklist_empty_store(service):
    worklist = service.phi_worklist(PHI)
    assert all(a["count"] == 0 for a in worklist["areas"])


def test_worklist_drops_closed_cases(service):
    case = register(service)
    order = service.orders.for_case(case.case_id)
    service.record_attendance(order.order_id, PHI, "confirmed", now=REG_AT + timedelta(hours=1))
    worklist = service.phi_worklist(PHI)
    # oracle: count of cases whose status is neither Confirmed nor NotDengue
    open_cases = [
        c for c in service.list_cases(phi_area="Gurunagar II")
        if c.attention not in (AttentionStatus.CONFIRMED, AttentionStatus.NOT_DENGUE)
    ]
    assert worklist["areas"][1]["count"] == len(open_cases) == 0


def test_worklist_requires_phi_role(service):
    with pytest.raises(ScopeViolation):
        service.phi_worklist(MOH)


LEGAL_PATHS = [
    [AttentionStatus.REPORTED],
    [AttentionStatus.REPORTED, AttentionStatus.ASSIGNED],
    [AttentionStatus.REPORTED, AttentionStatus.ASSIGNED, AttentionStatus.ATTENDED,
     AttentionStatus.CONFIRMED],
    [AttentionStatus.REPORTED, AttentionStatus.ASSIGNED, AttentionStatus.ATTENDED,
     AttentionStatus.NOT_DENGUE],
]


def is_legal_prefix(history):
    return any(history == path[: len(history)] for path in LEGAL_PATHS)


def test_random_operation_sequences_stay_legal():
    """State-machine safety: 200 random op sequences, histories stay prefixes
    of a legal path and illegal calls change nothing."""
    rng = random.Random(2024)
    service = build_service(auto_assign=False)
    case_ids = []
    for trial in range(200):
        op = rng.choice(["register", "assign", "attend"])
        at = REG_AT + timedelta(minutes=trial)
        if op == "register" or not case_ids:
            record = service.register_case(
                replace(seeds.figure5_intake(), opd_no=f"{trial:04d}"), now=at
            )
            case_ids.append(record.case_id)
            continue
        case_id = rng.choice(case_ids)
        before = service.status_history(case_id)
        try:
            if op == "assign":
                service.assign(case_id, MOH, PHI, now=at)
            else:
                order = service.orders.for_case(case_id)
                if order is None:
                    continue
                service.record_attendance(
                    order.order_id, PHI, rng.choice(["confirmed", "not_dengue"]), now=at
                )
        except (IllegalTransition, WrongOfficer, ScopeViolation, NotFound):
            assert service.status_history(case_id) == before
        history = service.status_history(case_id)
        assert is_legal_prefix(history), history
    # global invariant: one ID register entry per Confirmed case, none otherwise
    confirmed = [c for c in service.cases.all() if c.attention == AttentionStatus.CONFIRMED]
    assert len(service.id_register) == len(confirmed)
    for case in service.cases.all():
        assert service.id_register.has(case.case_id) == (
            case.attention == AttentionStatus.CONFIRMED
        )


def test_transition_table_is_closed():
    for status, targets in LEGAL_TRANSITIONS.items():
        assert AttentionStatus.REPORTED not in targets  # no regressions to start
        for target in targets:
            assert target in LEGAL_TRANSITIONS


def test_concurrent_transitions_serialize(service):
    cases = [
        register(service, opd_no=f"{i:03d}") for i in range(8)
    ]
    errors = []

    def confirm(case_id):
        order = service.orders.for_case(case_id)
        try:
            service.record_attendance(order.order_id, PHI, "confirmed")
        except IllegalTransition:
            errors.append(case_id)

    threads = [
        threading.Thread(target=confirm, args=(c.case_id,)) for c in cases for _ in range(3)
    ]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    # exactly one confirmation per case succeeded; duplicates raised
    assert len(service.id_register) == len(cases)
    assert len(errors) == len(threads) - len(cases)
