"""
Strutturazione: dai loadings ruotati a μ*, I e R per insieme di variabili.
"""
