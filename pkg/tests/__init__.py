"""Weakcoupling tests."""
