import json

import pytest

from errors import HypothesisViolated, InvalidData
from handlers import HandlerResult, guarded
from models import VerificationReport, to_json
from presentation import gamma0
from services.exotic_service import ExoticService
from services.report_service import EXIT_CODES, ReportService, payload_json


@pytest.fixture(scope="module")
def service():
    return ExoticService()


@pytest.fixture(scope="module")
def certificate4(service):
    return service.construct(4)


def test_exponent_of(service):
    assert service.exponent_of(2) == 1
    assert service.exponent_of(4) == 2
    assert service.exponent_of(32) == 5


@pytest.mark.parametrize("q,condition", [(8, "not_power_of_eight"), (64, "not_power_of_eight"), (3, "power_of_two"),
                                         (6, "power_of_two"), (128, "q_bound")])
def test_exponent_rejects(service, q, condition):
    with pytest.raises(HypothesisViolated) as info:
        service.exponent_of(q)
    assert info.value.witness["condition"] == condition


def test_order_two_reproduces_gamma0(service):
    pair, data = service.data_for(2)
    assert pair.scale == 1
    assert data == gamma0()


def test_exotic_certificate_of_order_four(certificate4):
    assert certificate4.status == "pass"
    assert certificate4.q == 4
    assert {0, 3, 9} <= set(certificate4.data.D)
    assert certificate4.data.pi2[3] == 9 and certificate4.data.pi2[9] == 3
    assert certificate4.morphism.scale == 3
    assert certificate4.morphism.valid
    assert len(certificate4.presentation.relators) == 3 + 4


def test_rationale_lines(certificate4):
    tags = [line.tag for line in certificate4.rationale]
    assert tags == ["COMPUTED"] * 7 + ["CITED"] * 3
    perfection = certificate4.rationale[6].value
    assert perfection["perfect"] is True
    assert perfection["index"] == 7


def test_corollary_checks(service):
    _, data = service.data_for(4)
    checks = service.corollary_checks(data, 7)
    assert all(checks.values())


def test_certificate_is_deterministic(service, certificate4):
    assert to_json(service.construct(4)) == to_json(certificate4)


def test_gamma0_report_is_cached(service):
    assert service.gamma0_perfect_report() is service.gamma0_perfect_report()


def test_guarded_turns_errors_into_payload():
    @guarded("проверки")
    def broken() -> HandlerResult:
        raise InvalidData("плохие данные", {"field": "D"})

    result = broken()
    assert result.status == "error"
    assert result.payload == {"error": "InvalidData", "message": "плохие данные", "witness": {"field": "D"}}
    assert result.witnesses == {"field": "D"}


def test_result_from_report():
    report = VerificationReport.from_checks("demo", {"a": True, "b": False}, witnesses={"b": [1]})
    result = HandlerResult.from_report(report, dot="graph {}")
    assert result.status == "fail"
    assert result.witnesses == {"b": [1]}
    assert result.dot == "graph {}"


def test_payload_json_is_sorted():
    text = payload_json({"b": 1, "a": [2, 1]})
    assert text.index('"a"') < text.index('"b"')
    report = VerificationReport.from_checks("demo", {"ok": True})
    assert json.loads(payload_json(report))["status"] == "pass"


def test_report_service_writes_manifest(tmp_path):
    out = tmp_path / "reports" / "result.json"
    dot = tmp_path / "graph.dot"
    service = ReportService(str(out), str(dot))
    result = HandlerResult({"value": 1}, "fail", dot="graph G {}", witnesses={"value": "wrong"})

    code = service.emit("demo run", {"q": 2}, result, 0.1234)

    assert code == EXIT_CODES["fail"] == 1
    assert json.loads(out.read_text(encoding="utf-8")) == {"value": 1}
    assert dot.read_text(encoding="utf-8").startswith("graph G")
    manifest = json.loads((tmp_path / "reports" / "result.json.manifest.json").read_text(encoding="utf-8"))
    assert manifest["command"] == "demo run"
    assert manifest["parameters"] == {"q": 2}
    assert manifest["status"] == "fail"
    assert manifest["elapsed_seconds"] == 0.123
    assert manifest["outputs"] == [str(out), str(dot)]
    assert manifest["witnesses"] == {"value": "wrong"}


def test_report_service_without_out_has_no_manifest(capsys):
    service = ReportService()
    assert service.manifest_path() is None
    code = service.emit("demo", {}, HandlerResult({"ok": True}, "pass"), 0.0)
    assert code == 0
    assert json.loads(capsys.readouterr().out) == {"ok": True}


def test_exotic_certificate_of_order_sixteen(service):
    certificate = service.construct(16)
    assert certificate.status == "pass"
    assert certificate.morphism.scale == 39
    assert {0, 39, 117} <= set(certificate.data.D)
    assert certificate.morphism.witness.verdict == "infinite"
