"""Support varieties for skew group algebras of exterior algebras."""
