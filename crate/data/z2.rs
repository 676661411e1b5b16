# Free abelian group of rank 2: shortlex normal forms a^i b^j.
[generators]
a A b B
[inverses]
a A
b B
[rules]
a A ->
A a ->
b B ->
B b ->
b a -> a b
b A -> A b
B a -> a B
B A -> A B
