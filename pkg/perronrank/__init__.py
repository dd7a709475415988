"""Perron family ranking: HodgeRank, Perron Rank and Tropical Rank of pairwise comparison matrices."""

__version__ = "1.0.0"
