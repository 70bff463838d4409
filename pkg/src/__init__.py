"""
hedgemap
Convex risk measures on boat-shaped acceptance sets: optimal value, optimal
payoff sets, their stability probes and a seeded certification suite
"""

__version__ = "1.0.0"
