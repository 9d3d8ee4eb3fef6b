from abc import ABC, abstractmethod
from dataclasses import is_dataclass
from enum import Enum
from typing import Generator, TypeAlias, TypeVar, get_type_hints

from .fields import FieldMapping, FieldValueType, format_field, get_field_value, parse_fields
from ..exceptions import ParserError

_T = TypeVar("_T", bound="Serializable")
MappingGenerator: TypeAlias = Generator[tuple[str, str], None, None]


class Serializable(ABC):
    """A dataclass that can be written as (and read back from) a single "#tag name=value ..." header line."""

    @staticmethod
    @abstractmethod
    def _tag() -> str:
        """
        The header tag, without the leading "#".
        :return: the tag
        """
        raise NotImplementedError("Unimplemented _tag method.")  # pragma: no cover

    @staticmethod
    @abstractmethod
    def _data_mappings() -> MappingGenerator:
        """
        Yield each variable name and its corresponding header field name.
        :return: a generator which yields the name, field
        """
        raise NotImplementedError("Unimplemented _data_mappings method.")  # pragma: no cover

    def serialize(self) -> str:
        """
        Serialize the current instance into a header line.
        :return: the header line (without a trailing newline)
        """
        assert is_dataclass(self.__class__), "The class should be a dataclass."

        tokens: list[str] = [f"#{self._tag()}"]
        for variable_name, field_name in self._data_mappings():
            value: FieldValueType | Enum = getattr(self, variable_name)
            tokens.append(format_field(field_name, value.value if isinstance(value, Enum) else value))
        return " ".join(tokens)

    @classmethod
    def deserialize(cls: type[_T], line: str) -> _T:
        """
        Deserialize a header line into a class instance.
        :param line: the header line
        :return: a populated instance
        :raises ParserError: from parse_fields and get_field_value, or on unknown enumeration values
        """
        assert is_dataclass(cls), "The class should be a dataclass."

        fields: FieldMapping = parse_fields(line, cls._tag())
        type_hints: dict[str, type] = get_type_hints(cls)
        data: dict[str, FieldValueType | Enum] = {}
        for variable_name, field_name in cls._data_mappings():
            result_type: type = type_hints[variable_name]
            if issubclass(result_type, Enum):
                # Enumerations are rebuilt from their string values
                raw_value: str = get_field_value(fields, field_name)
                try:
                    data[variable_name] = result_type(raw_value)
                except ValueError:
                    raise ParserError(f"Unknown {field_name!r} value {raw_value!r}.")
            else:
                data[variable_name] = get_field_value(fields, field_name, result_type=result_type)

        # Construct and return the class
        return cls(**data)  # type: ignore[return-value]
