from dataclasses import asdict, dataclass


@dataclass
class Config:
    closure_cap: int = 10_000
    lattice_cap: int = 500
    algebra_order_cap: int = 32
    algebra_field_cap: int = 9


CONFIG = Config()


def snapshot() -> dict:
    return asdict(CONFIG)
