"""Files shipped with the package."""

from importlib import resources


def data_path(name: str):
    return resources.files("refchain") / "data" / name


def read_bytes(name: str) -> bytes:
    return data_path(name).read_bytes()
