"""Loading, reporting and tracing helpers for tilekit."""
