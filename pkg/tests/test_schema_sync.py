from importlib import resources

from .conftest import REPO_ROOT


def test_repo_schema_matches_packaged_schema():
    packaged = resources.files("rads.schema").joinpath("scenario.schema.json").read_bytes()
    documented = (REPO_ROOT / "schema" / "scenario.schema.json").read_bytes()
    assert packaged == documented
