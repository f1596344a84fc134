"""Unit tests for stablereuse components."""
