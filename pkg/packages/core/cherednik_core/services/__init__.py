"""Сервисный слой: сборка отчётов проверок."""

from .verification import CollectingSink, RecordSink, VerificationRunner, merge_reports

__all__ = ["CollectingSink", "RecordSink", "VerificationRunner", "merge_reports"]
