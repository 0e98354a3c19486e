"""Weakcoupling management commands."""
