"""
Test suite per structuration-lab.

Contiene:
- Test unitari per ogni modulo (dynamics, infotheory, corpus, linalg, structuration)
- Test end-to-end della pipeline su corpus sintetici
- Test della CLI e di performance
"""
