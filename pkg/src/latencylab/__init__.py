"""Low-latency trading experiments: an SPSC Disruptor, a pairs-trading
backtester, cointegration tests and a benchmark harness."""

__version__ = "0.1.0"
