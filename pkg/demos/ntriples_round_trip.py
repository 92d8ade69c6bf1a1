"""Parse, write sorted, parse again: the bytes do not move."""

from rors import Dictionary, parse_ntriples, write_ntriples

raw = "\n".join([
    '<http://example.org/b> <http://example.org/name> "Bee \\"B\\" \\u00e9"@en .',
    "# comments and blank lines are skipped",
    "",
    "_:x <http://example.org/knows> <http://example.org/b> .",
    '<http://example.org/a> <http://example.org/age> "7"^^<http://www.w3.org/2001/XMLSchema#int> .',
]).encode()

d = Dictionary()
triples, _ = parse_ntriples(raw, d)
once = write_ntriples(triples, d, sorted=True)
print(once.decode())

d2 = Dictionary()
again = write_ntriples(parse_ntriples(once, d2)[0], d2, sorted=True)
print("fixed point:", once == again)
