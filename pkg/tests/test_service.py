import httpx
import pytest

from hyperspecies.cli import _InProcessTransport
from hyperspecies.service import app


@pytest.fixture
def client():
    with httpx.Client(
        transport=_InProcessTransport(app), base_url="http://testserver"
    ) as c:
        yield c


class TestHealth:
    def test_ok(self, client):
        response = client.get("/health")
        assert response.status_code == 200
        assert response.json() == {"status": "ok"}


class TestCoeffs:
    def test_basic(self, client):
        response = client.post(
            "/coeffs", json={"upper": ["1/2"], "lower": [], "order": 3}
        )
        assert response.status_code == 200
        body = response.json()
        assert body["coefficients"] == ["1", "1/2", "3/4", "15/8"]
        assert body["basis"] == "egf"

    def test_ordinary_basis(self, client):
        response = client.post(
            "/coeffs",
            json={"upper": ["1"], "lower": [], "order": 3, "basis": "ordinary"},
        )
        assert response.json()["coefficients"] == ["1", "1", "1", "1"]

    def test_bad_rational(self, client):
        response = client.post("/coeffs", json={"upper": ["1/0"], "lower": []})
        assert response.status_code == 400
        assert response.json()["detail"]["code"] == "usage"

    def test_nonpositive_lower(self, client):
        response = client.post(
            "/coeffs", json={"upper": [], "lower": ["-1/2"], "order": 2}
        )
        assert response.status_code == 400
        assert response.json()["detail"]["code"] == "usage"

    def test_negative_order_rejected(self, client):
        response = client.post("/coeffs", json={"order": -1})
        assert response.status_code == 422


class TestVerify:
    def test_verified(self, client):
        response = client.post(
            "/verify", json={"upper": ["1/2"], "lower": [], "order": 3}
        )
        assert response.status_code == 200
        body = response.json()
        assert body["verified"] is True
        assert body["resource_limited"] == []
        assert [e["analytic"] for e in body["per_n"]] == [
            "1",
            "1/2",
            "3/4",
            "15/8",
        ]
        assert all(
            e["explicit"] == e["symbolic"] == e["analytic"] for e in body["per_n"]
        )

    def test_alt_interpretation(self, client):
        response = client.post(
            "/verify",
            json={
                "upper": ["2/3"],
                "lower": ["1/2"],
                "order": 2,
                "interpretation": "alt",
            },
        )
        body = response.json()
        assert body["verified"] is True
        assert body["interpretation"] == "alt"

    def test_resource_limited(self, client):
        response = client.post(
            "/verify",
            json={"upper": ["3"], "lower": [], "order": 4, "max_objects": 50},
        )
        assert response.status_code == 200
        body = response.json()
        assert body["verified"] is False
        assert body["resource_limited"] != []
        first = body["resource_limited"][0]
        entry = next(e for e in body["per_n"] if e["n"] == first)
        assert entry["explicit"] is None
        assert entry["note"]

    def test_bad_param(self, client):
        response = client.post("/verify", json={"upper": ["x"], "lower": []})
        assert response.status_code == 400
        assert response.json()["detail"]["code"] == "usage"


class TestCard:
    def test_symbolic(self, client):
        response = client.post(
            "/card", json={"expression": "u(discrete(2),cyclic(3))"}
        )
        body = response.json()
        assert body["cardinality"] == "7/3"
        assert body["classes"] is None

    def test_explicit(self, client):
        response = client.post(
            "/card",
            json={"expression": "u(discrete(2),cyclic(3))", "mode": "explicit"},
        )
        body = response.json()
        assert body["cardinality"] == "7/3"
        assert body["iso_class_count"] == 3
        orders = sorted(c["automorphism_order"] for c in body["classes"])
        assert orders == [1, 1, 3]

    def test_parse_error(self, client):
        response = client.post("/card", json={"expression": "nope("})
        assert response.status_code == 400
        assert response.json()["detail"]["code"] == "usage"

    def test_resource_limit(self, client):
        response = client.post(
            "/card",
            json={
                "expression": "discrete(1000)",
                "mode": "explicit",
                "max_objects": 10,
            },
        )
        assert response.status_code == 400
        assert response.json()["detail"]["code"] == "resource_limit"


class TestSpecies:
    def test_builtin(self, client):
        response = client.post(
            "/species", json={"expression": "sets", "order": 3}
        )
        assert response.json()["coefficients"] == ["1", "1", "1", "1"]

    def test_hypergeometric_form(self, client):
        response = client.post(
            "/species", json={"expression": "H(1,1;2)", "order": 3}
        )
        assert response.json()["coefficients"] == ["1", "1/2", "2/3", "3/2"]

    def test_composition_precondition(self, client):
        response = client.post(
            "/species", json={"expression": "comp(sets,one)", "order": 2}
        )
        assert response.status_code == 400
        assert response.json()["detail"]["code"] == "usage"

    def test_expansion_limit(self, client):
        response = client.post(
            "/species", json={"expression": "prod(sets,sets)", "order": 25}
        )
        assert response.status_code == 400
        assert response.json()["detail"]["code"] == "resource_limit"
