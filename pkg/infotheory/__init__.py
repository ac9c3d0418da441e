"""
Teoria dell'informazione: entropie, trasmissioni, μ*, stima IPF a massima entropia,
interaction information e redundancy.
"""
