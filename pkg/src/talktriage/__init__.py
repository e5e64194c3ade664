"""Talk-Page monitoring: revision ingest, conversation parsing, derailment
forecasting, and a moderator-facing triage API."""

__version__ = "0.1.0"
