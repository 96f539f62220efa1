"""Commuting 2x2 matrix differential operators from spectral data on a glued CP1 x CP1."""
