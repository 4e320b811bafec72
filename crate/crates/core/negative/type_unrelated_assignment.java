class M { public static void main(String[] a) { System.out.println(new A().f()); } }
class A { public int f() { B b; b = new C(); return 0; } }
class B { }
class C { }
