import pytest

pytest.importorskip("streamlit")

from streamlit.testing.v1 import AppTest  # noqa: E402


@pytest.fixture
def app():
    at = AppTest.from_file("../app.py", default_timeout=60)
    at.run()
    at.sidebar.number_input[0].set_value(1).run()
    return at


def test_loads_without_errors(app):
    assert not app.exception
    assert not app.error
    assert app.title[0].value.startswith("spinbfv")


def test_evaluates_expression(app):
    app.text_input[0].input("pb(p1, x1)")
    app.button[0].click().run()
    assert app.code[0].value == "1"


def test_reports_parse_errors(app):
    app.text_input[0].input("x1 + y")
    app.button[0].click().run()
    assert "Parse Error at byte 5" in app.error[0].value


def test_runs_selected_checks(app):
    app.multiselect[0].set_value(["mc_poisson", "pi_theta_bracket"]).run()
    app.button[1].click().run()
    table = app.table[0].value
    assert list(table["check"]) == ["mc_poisson", "pi_theta_bracket"]


def test_rejects_bad_field(app):
    app.sidebar.text_area[0].input("0 1\n1 0").run()
    assert app.error
