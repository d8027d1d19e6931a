"""Validates every file the CLI writes against the documents in schemas/."""
import glob
import json
import os
import subprocess
import sys
import tempfile

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

shc, schema_dir = sys.argv[1], sys.argv[2]
docs = [json.load(open(p)) for p in glob.glob(os.path.join(schema_dir, "*.schema.json"))]
registry = Registry().with_resources([(d["$id"], Resource.from_contents(d)) for d in docs])
by_id = {d["$id"]: d for d in docs}


def validate(name, path):
    Draft202012Validator(by_id["urn:shc:" + name], registry=registry).validate(json.load(open(path)))


with tempfile.TemporaryDirectory() as d:
    def run(*args):
        subprocess.run([shc, *args], check=True, cwd=d, stdout=subprocess.DEVNULL)

    with open(os.path.join(d, "p.json"), "w") as f:
        json.dump({"points": [[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0], [0, 0, 1]]}, f)
    run("cycle", "build", "--n", "3", "--out", "z.json")
    run("cycle", "verify", "--in", "z.json", "--cert", "boundary.json")
    run("cocycle", "certify", "--in", "z.json", "--cert", "mu.json")
    run("sharbly", "boundary", "--vectors", "1,0;0,1;1,1", "--out", "chain.json")
    run("tile", "facets", "--form", "A4", "--out", "census.json")
    run("triangulate", "--in", "p.json", "--out", "tri.json")
    run("flip", "path", "--form", "D5", "--facet", "F", "--out", "flip.json")

    validate("points", os.path.join(d, "p.json"))
    validate("cycle", os.path.join(d, "z.json"))
    validate("chain", os.path.join(d, "chain.json"))
    for cert in ["boundary", "mu", "census", "tri", "flip"]:
        validate("certificate", os.path.join(d, cert + ".json"))
print("schemas ok")
