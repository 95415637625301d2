import importlib.util
import sys
from dataclasses import dataclass, field
from pathlib import Path
from types import ModuleType

import yaml

from .errors import ParseError


@dataclass
class CaseConfig:
    id: str
    op: str
    params: dict = field(default_factory=dict)
    expected: dict | None = None
    metadata: dict | None = None

    @property
    def slow(self) -> bool:
        return bool((self.metadata or {}).get("slow"))


@dataclass
class PackConfig:
    id: str
    name: str
    description: str
    trials: int = 5
    cases: list[CaseConfig] = field(default_factory=list)
    checker: ModuleType | None = None


def _load_yaml(path: Path) -> dict | list:
    with open(path) as f:
        return yaml.safe_load(f)


def _import_module_from_path(name: str, path: Path) -> ModuleType:
    spec = importlib.util.spec_from_file_location(name, path)
    if spec is None or spec.loader is None:
        raise ImportError(f"Cannot load module from {path}")
    mod = importlib.util.module_from_spec(spec)
    sys.modules[name] = mod
    spec.loader.exec_module(mod)
    return mod


def load_pack(pack_name: str, packs_dir: str = "packs") -> PackConfig:
    pack_path = Path(packs_dir) / pack_name

    pack_yaml_path = pack_path / "pack.yaml"
    if not pack_yaml_path.exists():
        raise FileNotFoundError(f"Pack config not found: {pack_yaml_path}")
    pack_data = _load_yaml(pack_yaml_path) or {}

    cases_yaml_path = pack_path / "cases.yaml"
    if not cases_yaml_path.exists():
        raise FileNotFoundError(f"Cases file not found: {cases_yaml_path}")
    cases_data = _load_yaml(cases_yaml_path)
    if not isinstance(cases_data, list):
        raise ParseError(f"{cases_yaml_path} must hold a list of cases")

    cases: list[CaseConfig] = []
    seen: set[str] = set()
    for entry in cases_data:
        if "op" not in entry:
            raise ParseError(f"case {entry.get('id')!r} in {pack_name} has no 'op'")
        case_id = str(entry.get("id", len(cases)))
        if case_id in seen:
            raise ParseError(f"duplicate case id {case_id!r} in {pack_name}")
        seen.add(case_id)
        cases.append(
            CaseConfig(
                id=case_id,
                op=str(entry["op"]),
                params=entry.get("params") or {},
                expected=entry.get("expected"),
                metadata=entry.get("metadata") or {},
            )
        )

    checker_path = pack_path / "checker.py"
    checker_mod = None
    if checker_path.exists():
        checker_mod = _import_module_from_path(f"singord.checkers.{pack_name}", checker_path)

    return PackConfig(
        id=pack_data.get("id", pack_name),
        name=pack_data.get("name", pack_name),
        description=pack_data.get("description", ""),
        trials=int(pack_data.get("trials", 5)),
        cases=cases,
        checker=checker_mod,
    )


def list_packs(packs_dir: str = "packs") -> list[str]:
    packs_path = Path(packs_dir)
    if not packs_path.is_dir():
        return []
    return sorted(
        d.name
        for d in packs_path.iterdir()
        if d.is_dir() and (d / "pack.yaml").exists()
    )
