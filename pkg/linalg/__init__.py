"""
Algebra lineare per il livello della struttura: correlazione, autovalori (Jacobi),
componenti principali, rotazione varimax.
"""
