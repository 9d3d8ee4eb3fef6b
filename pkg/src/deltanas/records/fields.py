import builtins
import math
from typing import TypeAlias, TypeVar

from ..exceptions import ParserError

FieldValueType: TypeAlias = str | int | float | bool
FieldMapping: TypeAlias = dict[str, str]
_T = TypeVar("_T", bound=FieldValueType)


def format_field(name: str, value: FieldValueType) -> str:
    """
    Formats a single header field.
    :param name: the name of the field
    :param value: the value of the field
    :return: a "name=value" token
    """
    # Transform the value to a string
    match value:
        case bool():
            text: str = str(value).lower()
        case float():
            text = repr(value)
        case _:
            text = str(value)

    if not text or any(character.isspace() for character in text) or "=" in text:
        raise ParserError(f"Field {name!r} has a value that can't be stored in a header: {text!r}.")
    return f"{name}={text}"


def parse_fields(line: str, tag: str) -> FieldMapping:
    """
    Splits a header line into its fields.
    :param line: a header line such as "#spec kind=block n=5 r=3"
    :param tag: the expected tag (without the leading "#")
    :return: a mapping of field names to raw values
    :raises ParserError: if the tag doesn't match or a token isn't a "name=value" pair
    """
    tokens: list[str] = line.strip().split()
    if not tokens or tokens[0] != f"#{tag}":
        raise ParserError(f"Expected a #{tag} header, got {line.strip()!r}.")

    fields: FieldMapping = {}
    for token in tokens[1:]:
        name, separator, value = token.partition("=")
        if not separator or not name:
            raise ParserError(f"Malformed header field {token!r} in #{tag} header.")
        if name in fields:
            raise ParserError(f"Repeated header field {name!r} in #{tag} header.")
        fields[name] = value
    return fields


# https://github.com/python/mypy/issues/3737
def get_field_value(fields: FieldMapping, name: str, result_type: type[_T] = str) -> _T:  # type: ignore[assignment]
    """
    Resolves a header field and casts it to the requested type.
    :param fields: the parsed header fields
    :param name: the field's name
    :param result_type: the type to cast the value to
    :return: the value of the field
    :raises ParserError: if the field is missing,
                         if the value can't be cast, or
                         if the result type isn't a supported type
    """
    value: str | None = fields.get(name, None)
    if value is None:
        raise ParserError(f"Missing header field {name!r}.")

    match result_type:
        case builtins.str:
            return value  # type: ignore[return-value]
        case builtins.int | builtins.float:
            try:
                result: int | float = result_type(value)
            except ValueError:
                raise ParserError(f"Couldn't cast the value {value!r} to an {result_type!r} type.")
            if isinstance(result, float) and math.isnan(result):
                raise ParserError(f"Field {name!r} is not a number.")
            return result  # type: ignore[return-value]
        case builtins.bool:
            if value not in ("true", "false"):
                raise ParserError(f"Couldn't cast the value {value!r} to a boolean.")
            return (value == "true")  # type: ignore[return-value]
        case _:
            raise ParserError("Type conversion not supported.")
