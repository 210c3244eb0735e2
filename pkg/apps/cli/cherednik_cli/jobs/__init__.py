"""Пакетные задания CLI."""
