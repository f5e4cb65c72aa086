"""Exact arithmetic over odd prime fields, small extension fields and the rationals."""
