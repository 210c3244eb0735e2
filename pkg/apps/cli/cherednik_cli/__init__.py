"""Командная строка проверок chk."""
