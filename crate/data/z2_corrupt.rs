# z2.rs with the rule B A -> A B removed. The system is no longer confluent:
# `B b A` reduces to both `A` and `B A b`. Used to check that damaged
# structure files are rejected with a counterexample.
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
