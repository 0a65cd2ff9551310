"""Bundled demo data: a weather-domain DataBank and a matching requirement set.

The demo set mirrors a four-service weather catalog (AirportWeatherCheck,
BerreWeather, fastweather2, Weather) with eight quality attributes and a
stakeholder requirement per attribute, all flagged mandatory. One service
deliberately omits its ART value so undefined-cell handling shows up in the
demo output.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .federation import DataBankDocument, load_databank
from .model import RequirementVector
from .wire import requirements_from_payload

WEATHER_DOMAIN = "weather"


def fixture_path(name: str) -> Path:
    """Filesystem path of a bundled fixture file."""
    return Path(str(resources.files(__package__).joinpath("fixtures", name)))


def weather_databank_path() -> Path:
    return fixture_path("weather_databank.json")


def weather_requirements_path() -> Path:
    return fixture_path("weather_requirements.json")


def load_weather_databank() -> DataBankDocument:
    return load_databank(weather_databank_path())


def load_weather_requirements() -> RequirementVector:
    payload = json.loads(weather_requirements_path().read_text(encoding="utf-8"))
    return requirements_from_payload(payload)
