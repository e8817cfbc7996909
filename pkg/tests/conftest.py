import pytest

from denguewatch import seeds
from denguewatch.alerting import MemoryTransport, parse_rules
from denguewatch.events import EventLog
from denguewatch.gazetteer import parse_gazetteer
from denguewatch.officers import parse_officers
from denguewatch.service import SurveillanceService
from denguewatch.vocab import parse_vocabulary

SL = seeds.SL


def build_service(
    transport=None,
    auto_assign=True,
    log=None,
    rules_doc=seeds.ALERT_RULES_DOC,
    gazetteer_doc=seeds.GAZETTEER_DOC,
    officers_doc=seeds.OFFICERS_DOC,
    max_retries=3,
    **kwargs,
):
    gazetteer = parse_gazetteer(gazetteer_doc)
    vocabs = {
        name: parse_vocabulary(name, "\n".join(tokens))
        for name, tokens in seeds.VOCABULARIES.items()
    }
    officers = parse_officers(officers_doc, gazetteer)
    rules = parse_rules(rules_doc)
    return SurveillanceService(
        gazetteer=gazetteer,
        vocabularies=vocabs,
        officers=officers,
        alert_rules=rules,
        log=log or EventLog(),
        transport=transport or MemoryTransport(),
        auto_assign=auto_assign,
        max_retries=max_retries,
        **kwargs,
    )


@pytest.fixture
def service():
    """Default service on the live-table fixture hierarchy, auto-assign on."""
    return build_service()


@pytest.fixture
def manual_service():
    """Same fixture data but manual assignment only."""
    return build_service(auto_assign=False)


@pytest.fixture
def gaz():
    return parse_gazetteer(seeds.GAZETTEER_DOC)
