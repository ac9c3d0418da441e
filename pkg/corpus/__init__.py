"""
Corpus bibliografico: caricamento, tokenizzazione dei titoli, matrici parole/autori.
"""
