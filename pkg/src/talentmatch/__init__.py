"""Two-sided talent matching: profiles, personality quiz, weighted scoring,
shortlist handshake, persistence, and a JSON HTTP service."""

__version__ = "0.1.0"
