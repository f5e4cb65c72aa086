"""Pydantic models for descriptors, serialized results and census reports."""
