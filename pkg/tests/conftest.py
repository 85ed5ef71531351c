"""Shared pytest configuration; test helpers live in helpers.py."""
