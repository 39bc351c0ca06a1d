import json
import pathlib
import subprocess

import jsonschema
import pytest
import referencing


def pytest_addoption(parser):
    parser.addoption("--sumsat", required=True, help="path to the sumsat binary")
    parser.addoption("--schemas", required=True, help="directory holding the JSON schemas")


class Cli:
    def __init__(self, binary, schema_dir):
        self.binary = binary
        self.schemas = {}
        resources = []
        for p in pathlib.Path(schema_dir).glob("*.schema.json"):
            doc = json.loads(p.read_text())
            self.schemas[p.name.removesuffix(".schema.json")] = doc
            resources.append((p.name, referencing.Resource.from_contents(doc)))
        self.registry = referencing.Registry().with_resources(resources)

    def exit_code(self, *args):
        return subprocess.run([self.binary, *map(str, args)], capture_output=True, timeout=300).returncode

    def run(self, *args, schema, code=0, stdin=None):
        proc = subprocess.run([self.binary, *map(str, args)], input=stdin, capture_output=True, text=True, timeout=300)
        assert proc.returncode == code, (proc.returncode, proc.stdout[-2000:], proc.stderr[-2000:])
        out = json.loads(proc.stdout)
        jsonschema.Draft202012Validator(self.schemas[schema], registry=self.registry).validate(out)
        return out


@pytest.fixture(scope="session")
def cli(request):
    return Cli(request.config.getoption("--sumsat"), request.config.getoption("--schemas"))
