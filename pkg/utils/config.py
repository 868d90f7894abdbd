import json
from abc import ABC
from dataclasses import asdict, dataclass, fields
from typing import Any, Dict


@dataclass
class BaseConfig(ABC):
    """
    Base configuration class.
    Subclasses declare their settings as dataclass fields and override validate().
    """

    def __post_init__(self):
        self.validate()

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BaseConfig":
        return cls(**data)

    @classmethod
    def from_json(cls, json_str: str) -> "BaseConfig":
        data = json.loads(json_str)
        return cls.from_dict(data)

    @classmethod
    def field_names(cls) -> set:
        return {f.name for f in fields(cls)}

    def validate(self) -> None:
        """
        Validate the configuration.
        Raises ValueError if validation fails.
        """
        pass
