class NullDeref {
    public static void main(String[] a) {
        System.out.println(new Holder().Run());
    }
}

// Reads through a field that was never assigned.
class Holder {
    Holder next;

    public int Run() {
        System.out.println(1);
        return next.Run();
    }
}
