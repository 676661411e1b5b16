# Infinite cyclic group.
[generators]
a A
[inverses]
a A
[rules]
a A ->
A a ->
